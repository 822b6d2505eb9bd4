#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "experiment.hpp"
#include "rng.hpp"

using mcen::experiment_config;

namespace {

std::filesystem::path tmp_file(const std::string& stem) {
    static int counter = 0;
    return std::filesystem::temp_directory_path() /
           ("mcen_test_" + std::to_string(::getpid()) + "_" + stem + "_" +
            std::to_string(counter++));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config validation") {
    experiment_config cfg;
    CHECK_NOTHROW(cfg.validate());

    auto bad = cfg;
    bad.n_matrices = 0;
    CHECK_THROWS_AS(bad.validate(), mcen::validation_error);
    bad = cfg;
    bad.dim_min = 2;
    CHECK_THROWS_AS(bad.validate(), mcen::validation_error);
    bad = cfg;
    bad.dim_max = bad.dim_min - 1;
    CHECK_THROWS_AS(bad.validate(), mcen::validation_error);
    bad = cfg;
    bad.rho_min = 0.0;
    CHECK_THROWS_AS(bad.validate(), mcen::validation_error);
    bad = cfg;
    bad.rho_max = 1.5;
    CHECK_THROWS_AS(bad.validate(), mcen::validation_error);
    bad = cfg;
    bad.rho_min = 0.0005;  // diag_max * rho_min < 1: empty off-diagonal range
    CHECK_THROWS_AS(bad.validate(), mcen::validation_error);
    bad = cfg;
    bad.bootstrap_resamples = 10;
    CHECK_THROWS_AS(bad.validate(), mcen::validation_error);
    bad = cfg;
    bad.bootstrap_level = 1.0;
    CHECK_THROWS_AS(bad.validate(), mcen::validation_error);
    bad = cfg;
    bad.jobs = -1;
    CHECK_THROWS_AS(bad.validate(), mcen::validation_error);
}

TEST_CASE("generated matrices respect the entry bounds") {
    experiment_config cfg;
    cfg.rho_min = 0.01;
    cfg.rho_max = 0.01;  // off-diagonal entries capped at floor(1000 * 0.01) = 10
    for (uint64_t idx = 0; idx < 50; ++idx) {
        auto g = mcen::rng::make_stream(99, mcen::rng::domain::generation, idx);
        const int n = static_cast<int>(mcen::rng::uniform_int(g, cfg.dim_min, cfg.dim_max));
        CHECK(n >= 3);
        CHECK(n <= 30);
        const auto m = mcen::generate_matrix(g, n, cfg);
        CHECK(m.n() == n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CHECK(m(i, j) >= 1);
                CHECK(m(i, j) <= (i == j ? 1000 : 10));
            }
    }
}

TEST_CASE("experiment is deterministic and independent of the job count") {
    experiment_config cfg;
    cfg.n_matrices = 1500;
    cfg.seed = 7;
    cfg.bootstrap_resamples = 200;

    const auto rec1 = tmp_file("records1.csv"), sum1 = tmp_file("summary1.json");
    const auto rec2 = tmp_file("records2.csv"), sum2 = tmp_file("summary2.json");

    cfg.jobs = 1;
    mcen::run_experiment(cfg, rec1.string(), sum1.string());
    cfg.jobs = 5;
    mcen::run_experiment(cfg, rec2.string(), sum2.string());

    CHECK(slurp(rec1) == slurp(rec2));
    CHECK(slurp(sum1) == slurp(sum2));
    CHECK(!slurp(rec1).empty());

    std::filesystem::remove(rec1);
    std::filesystem::remove(rec2);
    std::filesystem::remove(sum1);
    std::filesystem::remove(sum2);
}

TEST_CASE("records reload and re-aggregate to the identical summary") {
    experiment_config cfg;
    cfg.n_matrices = 800;
    cfg.seed = 13;
    cfg.bootstrap_resamples = 150;

    const auto rec = tmp_file("records.csv");
    const auto live = mcen::run_experiment(cfg, rec.string(), "");

    const auto records = mcen::read_records_csv(rec.string());
    REQUIRE(records.size() == 800);
    CHECK(records.front().index == 0);
    CHECK(records.back().index == 799);

    mcen::summarizer agg(cfg);
    for (const auto& r : records)
        agg.add(r);
    const auto reloaded = agg.finish();

    REQUIRE(live.pearson_r.has_value());
    REQUIRE(reloaded.pearson_r.has_value());
    CHECK(*live.pearson_r == *reloaded.pearson_r);  // bit identical, not approx
    REQUIRE(live.mean_ratio.has_value());
    CHECK(*live.mean_ratio == *reloaded.mean_ratio);
    REQUIRE(live.mean_ratio_unk.has_value());
    CHECK(*live.mean_ratio_unk == *reloaded.mean_ratio_unk);
    REQUIRE(live.ci_lo.has_value());
    CHECK(*live.ci_lo == *reloaded.ci_lo);
    CHECK(*live.ci_hi == *reloaded.ci_hi);
    REQUIRE(live.consistency.has_value());
    CHECK(*live.consistency == *reloaded.consistency);
    CHECK(live.zero_cen_count == reloaded.zero_cen_count);

    std::filesystem::remove(rec);
}

TEST_CASE("requested dimensions are honored") {
    experiment_config cfg;
    cfg.n_matrices = 120;
    cfg.dim_min = 5;
    cfg.dim_max = 5;
    const auto rec = tmp_file("dims.csv");
    mcen::run_experiment(cfg, rec.string(), "");
    for (const auto& r : mcen::read_records_csv(rec.string()))
        CHECK(r.n == 5);
    std::filesystem::remove(rec);
}

TEST_CASE("degenerate run sizes flag undefined statistics") {
    experiment_config cfg;
    cfg.n_matrices = 1;
    const auto s = mcen::run_experiment(cfg, "", "");
    CHECK(s.n_matrices == 1);
    CHECK_FALSE(s.pearson_r.has_value());
    CHECK_FALSE(s.consistency.has_value());
    CHECK_FALSE(s.ci_lo.has_value());
    CHECK(s.mean_ratio.has_value());  // a single ratio still has a mean
    CHECK_FALSE(s.sanity_band_evaluated);
    CHECK(s.sanity_band_ok);
}

TEST_CASE("ratio means with and without the correction factor") {
    experiment_config cfg;
    cfg.n_matrices = 2000;
    cfg.seed = 3;
    cfg.bootstrap_resamples = 150;
    const auto s = mcen::run_experiment(cfg, "", "");
    REQUIRE(s.mean_ratio.has_value());
    REQUIRE(s.mean_ratio_unk.has_value());
    // the correction factor exceeds 1 for every dimension, so dividing by it
    // pointwise pushes the mean ratio strictly below the uncorrected one
    CHECK(*s.mean_ratio < *s.mean_ratio_unk);
    REQUIRE(s.pearson_r.has_value());
    CHECK(*s.pearson_r > 0.9);  // strong linear association at any sample size
    REQUIRE(s.ci_lo.has_value());
    CHECK(*s.ci_lo < *s.mean_ratio);
    CHECK(*s.mean_ratio < *s.ci_hi);
}

TEST_CASE("summary json carries every field") {
    experiment_config cfg;
    cfg.n_matrices = 300;
    cfg.bootstrap_resamples = 150;
    const auto sum = tmp_file("summary.json");
    mcen::run_experiment(cfg, "", sum.string());

    const auto j = nlohmann::json::parse(slurp(sum));
    for (const char* key :
         {"pearson_r", "consistency", "discriminancy", "mean_ratio", "ci_lo", "ci_hi",
          "mean_ratio_unk", "zero_cen_count", "n_matrices", "seed", "rng",
          "sanity_band_evaluated", "sanity_band_ok", "config"})
        CHECK(j.contains(key));
    CHECK(j["n_matrices"] == 300);
    CHECK(j["rng"] == mcen::rng::identifier);
    CHECK(j["config"]["dim_max"] == 30);
    CHECK(j["config"]["pair_sample"] == 100000000ULL);

    std::filesystem::remove(sum);
}

TEST_CASE("record csv parse failures are reported") {
    const auto p = tmp_file("bad.csv");
    {
        std::ofstream out(p);
        out << "wrong,header\n";
    }
    CHECK_THROWS_AS(mcen::read_records_csv(p.string()), mcen::parse_error);
    {
        std::ofstream out(p);
        out << mcen::records_csv_header << "\n0,3,0.5\n";
    }
    CHECK_THROWS_AS(mcen::read_records_csv(p.string()), mcen::parse_error);
    std::filesystem::remove(p);
    CHECK_THROWS_AS(mcen::read_records_csv(p.string()), mcen::io_error);
}
