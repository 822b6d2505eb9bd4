#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "matrix.hpp"
#include "metrics.hpp"

using mcen::confusion_matrix;

namespace {

confusion_matrix ones(int n) {
    return confusion_matrix::from_entries(n, std::vector<long long>(static_cast<size_t>(n) * n, 1));
}

confusion_matrix binary(long long tp, long long fn, long long fp, long long tn) {
    return confusion_matrix::from_entries({{tp, fn}, {fp, tn}});
}

}  // namespace

TEST_CASE("reference matrices") {
    const auto uniform3 = ones(3);
    CHECK(mcen::accuracy(uniform3) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(mcen::mcc(uniform3) == 0.0);
    // frozen: entropy measure of the 3-class all-ones matrix
    CHECK(mcen::cen(uniform3) == doctest::Approx(0.8616541669070522).epsilon(1e-15));

    const auto diag = confusion_matrix::from_entries({{4, 0, 0}, {0, 9, 0}, {0, 0, 2}});
    CHECK(mcen::accuracy(diag) == 1.0);
    CHECK(mcen::mcc(diag) == 1.0);
    CHECK(mcen::cen(diag) == 0.0);
    CHECK(mcen::tmcc(diag) == 0.0);

    // all predictions land in one class: degenerate marginals, mcc pinned to 0
    const auto column = confusion_matrix::from_entries({{3, 0, 0}, {5, 0, 0}, {2, 0, 0}});
    CHECK(mcen::mcc(column) == 0.0);
    CHECK(mcen::cen(column) > 0.0);

    CHECK(mcen::mcc(binary(0, 5, 5, 0)) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("zero entries contribute nothing to the entropy sum") {
    const auto sparse = confusion_matrix::from_entries({{7, 0, 1}, {0, 7, 0}, {0, 0, 7}});
    const double v = mcen::cen(sparse);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);

    // a lone off-diagonal entry is a degenerate case where the measure
    // collapses to zero despite the matrix not being diagonal
    const auto lone = confusion_matrix::from_entries({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}});
    CHECK(mcen::cen(lone) == 0.0);
}

TEST_CASE("correction factor") {
    CHECK(mcen::k_factor(3) == doctest::Approx(1.1301930063435344).epsilon(1e-15));
    CHECK(mcen::k_factor(5) == doctest::Approx(1.1048396258097124).epsilon(1e-15));
    CHECK(mcen::k_factor(1000000) == doctest::Approx(1.012).epsilon(1e-2));
    CHECK(mcen::k_factor(4) > mcen::k_factor(7));  // decreasing toward the limit
    CHECK_THROWS_AS(mcen::k_factor(2), mcen::validation_error);
    CHECK_THROWS_AS(mcen::k_factor(0), mcen::validation_error);
}

TEST_CASE("transformed correlation measure") {
    CHECK_THROWS_AS(mcen::tmcc(binary(1, 2, 3, 4)), mcen::validation_error);

    // perfect classification short-circuits before the log of (1 - acc)
    const auto perfect = confusion_matrix::from_entries({{5, 0, 0}, {0, 5, 0}, {0, 0, 5}});
    CHECK(mcen::tmcc(perfect) == 0.0);

    // on the constant-diagonal family the transform reproduces the entropy
    // measure exactly (the identity factors coincide)
    for (int n : {3, 4, 6, 9}) {
        for (long long t : {0LL, 1LL, 3LL, 10LL}) {
            for (long long f : {1LL, 2LL, 7LL}) {
                std::vector<long long> e(static_cast<size_t>(n) * n, f);
                for (int i = 0; i < n; ++i)
                    e[static_cast<size_t>(i) * n + i] = t;
                const auto m = confusion_matrix::from_entries(n, e);
                CHECK(mcen::tmcc(m) == doctest::Approx(mcen::cen(m)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("report flags the transform below 3 classes") {
    const auto rep2 = mcen::compute_report(binary(3, 1, 2, 4));
    CHECK_FALSE(rep2.has_tmcc);
    CHECK(std::isnan(rep2.tmcc));
    CHECK(std::isnan(rep2.k_cen));
    CHECK(rep2.n == 2);
    CHECK(rep2.total == 10);

    const auto m3 = confusion_matrix::from_entries({{5, 1, 1}, {1, 5, 1}, {1, 1, 5}});
    const auto rep3 = mcen::compute_report(m3);
    CHECK(rep3.has_tmcc);
    CHECK(rep3.tmcc == doctest::Approx(mcen::tmcc(m3)).epsilon(1e-15));
    CHECK(rep3.k_cen == doctest::Approx(mcen::k_factor(3) * mcen::cen(m3)).epsilon(1e-15));
    CHECK(rep3.acc == doctest::Approx(mcen::accuracy(m3)).epsilon(1e-15));
}

TEST_CASE("closed binary forms match the general measures on the full small grid") {
    for (long long tp = 0; tp <= 6; ++tp)
        for (long long fn = 0; fn <= 6; ++fn)
            for (long long fp = 0; fp <= 6; ++fp)
                for (long long tn = 0; tn <= 6; ++tn) {
                    if (tp + fn + fp + tn == 0)
                        continue;
                    const auto m = binary(tp, fn, fp, tn);
                    CHECK(mcen::mcc_binary(m) ==
                          doctest::Approx(mcen::mcc(m)).epsilon(1e-12));
                    CHECK(mcen::cen_binary(m) ==
                          doctest::Approx(mcen::cen(m)).epsilon(1e-12));
                }
    CHECK_THROWS_AS(mcen::mcc_binary(ones(3)), mcen::validation_error);
    CHECK_THROWS_AS(mcen::cen_binary(ones(3)), mcen::validation_error);
}

TEST_CASE("two-class entropy measure exceeds 1 between the symmetric endpoints") {
    // frozen: cen([[1,2],[2,1]]) = (2/3) * log2(3)
    CHECK(mcen::cen_binary(binary(1, 2, 2, 1)) ==
          doctest::Approx(1.0566416671474375).epsilon(1e-15));
    CHECK(mcen::cen_binary(binary(1, 2, 2, 1)) ==
          doctest::Approx(2.0 / 3 * std::log2(3.0)).epsilon(1e-15));

    // symmetric matrices [[t,f],[f,t]] with 0 < t < f sit strictly above 1
    for (long long t = 1; t <= 20; ++t)
        for (long long f = t + 1; f <= 21; ++f)
            CHECK(mcen::cen_binary(binary(t, f, f, t)) > 1.0);

    // and the endpoints t = 0 and t = f land exactly on 1
    CHECK(mcen::cen_binary(binary(0, 3, 3, 0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mcen::cen_binary(binary(5, 5, 5, 5)) == doctest::Approx(1.0).epsilon(1e-15));

    // interior maximum near t/f = 0.359 tops out around 1.0615
    CHECK(mcen::cen_binary(binary(359, 1000, 1000, 359)) > 1.06);
    CHECK(mcen::cen_binary(binary(359, 1000, 1000, 359)) < 1.062);

    CHECK(mcen::cen_binary(binary(4, 0, 0, 9)) == 0.0);
}
