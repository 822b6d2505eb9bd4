#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include <mcen.h>

namespace {

std::filesystem::path tmp_file(const std::string& stem) {
    static int counter = 0;
    return std::filesystem::temp_directory_path() /
           ("mcen_capi_" + std::to_string(::getpid()) + "_" + stem + "_" +
            std::to_string(counter++));
}

struct handle {
    mcen_matrix* m = nullptr;
    ~handle() { mcen_matrix_free(m); }
};

}  // namespace

TEST_CASE("status names and error reporting") {
    CHECK(std::string(mcen_status_name(MCEN_OK)) == "MCEN_OK");
    CHECK(std::string(mcen_status_name(MCEN_ERR_BUDGET)) == "MCEN_ERR_BUDGET");

    handle h;
    const int64_t bad[] = {1, -2, 3, 4};
    CHECK(mcen_matrix_from_entries(2, bad, &h.m) == MCEN_ERR_VALIDATION);
    CHECK(std::strlen(mcen_last_error()) > 0);

    const int64_t good[] = {1, 2, 3, 4};
    CHECK(mcen_matrix_from_entries(2, good, &h.m) == MCEN_OK);
    CHECK(std::strlen(mcen_last_error()) == 0);  // success clears the message

    CHECK(mcen_matrix_from_entries(2, nullptr, &h.m) == MCEN_ERR_VALIDATION);
    CHECK(mcen_matrix_read_csv("/nonexistent/x.csv", &h.m) == MCEN_ERR_IO);
}

TEST_CASE("matrix accessors") {
    handle h;
    const int64_t e[] = {5, 1, 0, 2, 7, 1, 0, 0, 4};
    REQUIRE(mcen_matrix_from_entries(3, e, &h.m) == MCEN_OK);
    CHECK(mcen_matrix_n(h.m) == 3);
    CHECK(mcen_matrix_total(h.m) == 20);
    CHECK(mcen_matrix_trace(h.m) == 16);
    CHECK(mcen_matrix_entry(h.m, 1, 0) == 2);
    CHECK(mcen_matrix_entry(h.m, 3, 0) == -1);  // out of range
    CHECK(mcen_matrix_entry(h.m, 0, -1) == -1);
    CHECK(mcen_matrix_row_sum(h.m, 1) == 10);
    CHECK(mcen_matrix_col_sum(h.m, 2) == 5);
    CHECK(mcen_matrix_row_sum(h.m, 9) == -1);
    CHECK(mcen_matrix_n(nullptr) == -1);

    handle scaled;
    REQUIRE(mcen_matrix_scale(h.m, 3, &scaled.m) == MCEN_OK);
    CHECK(mcen_matrix_total(scaled.m) == 60);
}

TEST_CASE("label pairs and csv io") {
    handle h;
    const int32_t truth[] = {1, 2, 2, 3};
    const int32_t pred[] = {1, 2, 3, 3};
    REQUIRE(mcen_matrix_from_label_pairs(truth, pred, 4, 3, &h.m) == MCEN_OK);
    CHECK(mcen_matrix_entry(h.m, 1, 2) == 1);
    CHECK(mcen_matrix_total(h.m) == 4);

    const auto p = tmp_file("m.csv");
    REQUIRE(mcen_matrix_write_csv(h.m, p.string().c_str()) == MCEN_OK);
    handle back;
    REQUIRE(mcen_matrix_read_csv(p.string().c_str(), &back.m) == MCEN_OK);
    CHECK(mcen_matrix_entry(back.m, 1, 2) == 1);
    std::filesystem::remove(p);

    {
        std::ofstream out(p);
        out << "1,oops\n2,3\n";
    }
    handle bad;
    CHECK(mcen_matrix_read_csv(p.string().c_str(), &bad.m) == MCEN_ERR_PARSE);
    CHECK(std::string(mcen_last_error()).find("line 1") != std::string::npos);
    std::filesystem::remove(p);
}

TEST_CASE("measures through the c interface") {
    handle h;
    const int64_t e[] = {5, 1, 1, 1, 5, 1, 1, 1, 5};
    REQUIRE(mcen_matrix_from_entries(3, e, &h.m) == MCEN_OK);

    mcen_metric_report rep{};
    REQUIRE(mcen_compute_report(h.m, &rep) == MCEN_OK);
    CHECK(rep.n == 3);
    CHECK(rep.total == 21);
    CHECK(rep.has_tmcc == 1);

    double acc = 0, mcc = 0, cen = 0, tmcc = 0, k = 0;
    CHECK(mcen_accuracy(h.m, &acc) == MCEN_OK);
    CHECK(mcen_mcc(h.m, &mcc) == MCEN_OK);
    CHECK(mcen_cen(h.m, &cen) == MCEN_OK);
    CHECK(mcen_tmcc(h.m, &tmcc) == MCEN_OK);
    CHECK(mcen_k_factor(3, &k) == MCEN_OK);
    CHECK(rep.acc == acc);
    CHECK(rep.mcc == mcc);
    CHECK(rep.cen == cen);
    CHECK(rep.tmcc == tmcc);
    CHECK(rep.k_cen == k * cen);
    CHECK(acc == doctest::Approx(15.0 / 21).epsilon(1e-15));

    CHECK(mcen_k_factor(2, &k) == MCEN_ERR_VALIDATION);

    handle two;
    const int64_t b[] = {1, 2, 2, 1};
    REQUIRE(mcen_matrix_from_entries(2, b, &two.m) == MCEN_OK);
    mcen_metric_report rep2{};
    REQUIRE(mcen_compute_report(two.m, &rep2) == MCEN_OK);
    CHECK(rep2.has_tmcc == 0);
    CHECK(std::isnan(rep2.tmcc));
    double bc = 0;
    CHECK(mcen_cen_binary(two.m, &bc) == MCEN_OK);
    CHECK(bc == doctest::Approx(1.0566416671474375).epsilon(1e-15));
    CHECK(mcen_cen_binary(h.m, &bc) == MCEN_ERR_VALIDATION);
}

TEST_CASE("families through the c interface") {
    mcen_family_params p{};
    p.family = MCEN_FAMILY_ZA;
    p.n = 3;
    p.a = 3;
    handle h;
    REQUIRE(mcen_family_matrix(&p, &h.m) == MCEN_OK);
    CHECK(mcen_matrix_total(h.m) == 11);

    double closed = 0, direct = 0;
    CHECK(mcen_mcc_za_closed(3, 3, &closed) == MCEN_OK);
    CHECK(mcen_mcc(h.m, &direct) == MCEN_OK);
    CHECK(closed == doctest::Approx(direct).epsilon(1e-12));
    CHECK(closed == doctest::Approx(-1.0 / 13).epsilon(1e-15));

    double v = 0;
    CHECK(mcen_cen_uniform(4, &v) == MCEN_OK);
    CHECK(v == doctest::Approx(0.8704188162777184).epsilon(1e-15));
    CHECK(mcen_cen_unbalanced_limit(3, &v) == MCEN_OK);
    CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(mcen_mcc_b_closed(3, 2, 1, &v) == MCEN_OK);
    CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mcen_cen_uniform(2, &v) == MCEN_ERR_VALIDATION);

    p.n = 2;
    CHECK(mcen_family_matrix(&p, &h.m) == MCEN_ERR_VALIDATION);
}

TEST_CASE("comparison through the c interface") {
    const double f[] = {1, 2, 3, 3};
    const double g[] = {1, 3, 2, 2};
    mcen_degrees_result d{};
    REQUIRE(mcen_degrees(f, g, 4, 1e-12, &d) == MCEN_OK);
    CHECK(d.r + d.s + d.p + d.q <= 6);
    CHECK(d.s >= 1);

    double r = 0;
    const double xs[] = {1, 2, 3};
    const double ys[] = {2, 4, 6};
    REQUIRE(mcen_pearson(xs, ys, 3, &r) == MCEN_OK);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
    const double flat[] = {5, 5, 5};
    CHECK(mcen_pearson(xs, flat, 3, &r) == MCEN_ERR_VALIDATION);

    double values[120];
    for (int i = 0; i < 120; ++i)
        values[i] = (i % 13) * 0.5;
    double lo = 0, hi = 0;
    REQUIRE(mcen_bootstrap_mean_ci(values, 120, 500, 0.95, 42, &lo, &hi) == MCEN_OK);
    CHECK(lo < hi);

    const int64_t rows[] = {2, 4, 3};
    uint64_t count = 0;
    REQUIRE(mcen_enumeration_count(rows, 3, 1000000, &count) == MCEN_OK);
    CHECK(count == 900);

    mcen_enumerate_compare_result res{};
    REQUIRE(mcen_enumerate_compare(rows, 3, MCEN_MEASURE_CEN, MCEN_MEASURE_MCC, 1e-12,
                                   1000000, &res) == MCEN_OK);
    CHECK(res.domain_size == 900);
    CHECK(res.degrees.p == 3178);
    CHECK(res.degrees.q == 591);
    CHECK(res.degrees.r == 314818);
    CHECK(res.degrees.s == 85807);
    CHECK(res.degrees.has_discriminancy == 1);
    CHECK(res.degrees.discriminancy == doctest::Approx(5.377326565143824).epsilon(1e-15));

    const int64_t big[] = {50, 50, 50};
    CHECK(mcen_enumerate_compare(big, 3, MCEN_MEASURE_CEN, MCEN_MEASURE_MCC, 1e-12, 1000,
                                 &res) == MCEN_ERR_BUDGET);
    CHECK(mcen_enumerate_compare(rows, 3, MCEN_MEASURE_MCC, MCEN_MEASURE_MCC, 1e-12, 1000000,
                                 &res) == MCEN_ERR_VALIDATION);
}

TEST_CASE("experiment through the c interface") {
    mcen_experiment_config cfg{};
    mcen_experiment_config_default(&cfg);
    CHECK(cfg.n_matrices == 200000);
    CHECK(cfg.dim_min == 3);
    CHECK(cfg.dim_max == 30);
    CHECK(cfg.diag_max == 1000);
    CHECK(cfg.seed == 42);

    cfg.n_matrices = 400;
    cfg.bootstrap_resamples = 150;
    const auto rec = tmp_file("records.csv");
    const auto sum = tmp_file("summary.json");

    mcen_experiment_summary s{};
    REQUIRE(mcen_experiment_run(&cfg, rec.string().c_str(), sum.string().c_str(), &s) ==
            MCEN_OK);
    CHECK(s.n_matrices == 400);
    CHECK(s.has_pearson_r == 1);
    CHECK(s.pearson_r > 0.8);
    CHECK(s.has_mean_ratio == 1);
    CHECK(s.sanity_band_evaluated == 0);
    CHECK(std::filesystem::file_size(rec) > 0);
    CHECK(std::filesystem::file_size(sum) > 0);
    std::filesystem::remove(rec);
    std::filesystem::remove(sum);

    cfg.dim_min = 1;
    CHECK(mcen_experiment_run(&cfg, nullptr, nullptr, &s) == MCEN_ERR_VALIDATION);
    CHECK(mcen_experiment_run(nullptr, nullptr, nullptr, &s) == MCEN_ERR_VALIDATION);

    CHECK(std::string(mcen_rng_identifier()).find("splitmix64") != std::string::npos);
}
