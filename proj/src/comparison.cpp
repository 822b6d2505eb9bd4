#include "comparison.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "metrics.hpp"
#include "rng.hpp"

namespace mcen {

namespace {

int sign_with_tolerance(double delta, double tol) {
    if (std::abs(delta) <= tol) return 0;
    return delta > 0 ? 1 : -1;
}

}  // namespace

degrees_result degrees(std::span<const double> f_values, std::span<const double> g_values,
                       double tie_tolerance) {
    if (f_values.size() != g_values.size())
        throw validation_error("measure sequences must have equal length: " +
                               std::to_string(f_values.size()) + " vs " +
                               std::to_string(g_values.size()));
    if (tie_tolerance < 0) throw validation_error("tie tolerance must be nonnegative");
    degrees_result out;
    out.tie_tolerance = tie_tolerance;
    const size_t m = f_values.size();
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            const int sf = sign_with_tolerance(f_values[i] - f_values[j], tie_tolerance);
            const int sg = sign_with_tolerance(g_values[i] - g_values[j], tie_tolerance);
            if (sf != 0 && sg == 0)
                ++out.p;
            else if (sf == 0 && sg != 0)
                ++out.q;
            else if (sf != 0 && sg != 0)
                (sf == sg ? out.r : out.s)++;
        }
    }
    if (out.r + out.s > 0)
        out.consistency = static_cast<double>(out.r) / static_cast<double>(out.r + out.s);
    if (out.q > 0) out.discriminancy = static_cast<double>(out.p) / static_cast<double>(out.q);
    return out;
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw validation_error("sequences must have equal length: " + std::to_string(xs.size()) +
                               " vs " + std::to_string(ys.size()));
    if (xs.size() < 2) throw validation_error("correlation requires at least 2 points");
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) throw validation_error("correlation undefined: zero variance");
    return sxy / (std::sqrt(sxx) * std::sqrt(syy));
}

namespace {

// Linear-interpolation quantile of a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const size_t m = sorted.size();
    if (m == 1) return sorted[0];
    const double h = p * static_cast<double>(m - 1);
    const size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= m) return sorted[m - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

bootstrap_ci bootstrap_mean_ci(std::span<const double> values, long long n_resamples,
                               double level, uint64_t seed) {
    if (values.empty()) throw validation_error("bootstrap requires nonempty values");
    if (n_resamples < 100)
        throw validation_error("bootstrap requires at least 100 resamples, got " +
                               std::to_string(n_resamples));
    if (!(level > 0.0 && level < 1.0))
        throw validation_error("bootstrap level must be in (0,1), got " + std::to_string(level));
    const size_t m = values.size();
    double mean = 0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(m);
    double ss = 0;
    for (double v : values) ss += (v - mean) * (v - mean);
    if (ss <= 0.0) throw validation_error("bootstrap undefined: all values identical (zero se)");
    const double se = std::sqrt(ss / static_cast<double>(m - 1) / static_cast<double>(m));

    auto g = rng::make_stream(seed, rng::domain::bootstrap, 0);
    std::vector<double> ts;
    ts.reserve(static_cast<size_t>(n_resamples));
    for (long long b = 0; b < n_resamples; ++b) {
        // Welford over one resample.
        double rm = 0, m2 = 0;
        for (size_t i = 0; i < m; ++i) {
            const double v = values[rng::bounded(g, m)];
            const double d = v - rm;
            rm += d / static_cast<double>(i + 1);
            m2 += d * (v - rm);
        }
        if (m2 <= 0.0) continue;  // constant resample: cannot studentize
        const double rse = std::sqrt(m2 / static_cast<double>(m - 1) / static_cast<double>(m));
        ts.push_back((rm - mean) / rse);
    }
    if (ts.empty()) throw validation_error("bootstrap undefined: every resample was constant");
    std::sort(ts.begin(), ts.end());
    const double alpha = (1.0 - level) / 2.0;
    bootstrap_ci out;
    out.mean = mean;
    out.lo = mean - quantile_sorted(ts, 1.0 - alpha) * se;
    out.hi = mean - quantile_sorted(ts, alpha) * se;
    return out;
}

namespace {

// C(k+n-1, n-1) clamped to avoid overflow; cap_hint bounds useful precision.
unsigned long long weak_composition_count(long long k, int n) {
    // multiplicative binomial evaluation in 128-bit with clamping
    const unsigned long long huge = ~0ULL;
    __uint128_t result = 1;
    for (int i = 1; i <= n - 1; ++i) {
        result = result * static_cast<unsigned __int128>(k + i) / static_cast<unsigned>(i);
        if (result > huge) return huge;
    }
    return static_cast<unsigned long long>(result);
}

}  // namespace

unsigned long long enumeration_count(std::span<const long long> row_sums,
                                     unsigned long long cap) {
    if (row_sums.size() < 2)
        throw validation_error("row sums must cover at least 2 classes, got " +
                               std::to_string(row_sums.size()));
    const int n = static_cast<int>(row_sums.size());
    long long total = 0;
    for (long long k : row_sums) {
        if (k < 0) throw validation_error("row sums must be nonnegative, got " + std::to_string(k));
        total += k;
    }
    if (total < 1) throw validation_error("row sums must total at least 1");
    __uint128_t count = 1;
    for (long long k : row_sums) {
        count *= weak_composition_count(k, n);
        if (count > cap)
            throw budget_error("enumeration domain exceeds cap of " + std::to_string(cap) +
                               " matrices");
    }
    return static_cast<unsigned long long>(count);
}

namespace {

// Recursively assign row `row` as a weak composition of row_sums[row] into n
// parts, leftmost part descending, then recurse into the next row.
void enumerate_rows(std::span<const long long> row_sums, int row, int col, long long remaining,
                    std::vector<long long>& flat,
                    const std::function<void(const confusion_matrix&)>& visit) {
    const int n = static_cast<int>(row_sums.size());
    if (row == n) {
        visit(confusion_matrix::from_entries(n, flat));
        return;
    }
    if (col == n - 1) {
        flat[static_cast<size_t>(row) * n + col] = remaining;
        enumerate_rows(row_sums, row + 1, 0, row + 1 < n ? row_sums[row + 1] : 0, flat, visit);
        return;
    }
    for (long long v = remaining; v >= 0; --v) {
        flat[static_cast<size_t>(row) * n + col] = v;
        enumerate_rows(row_sums, row, col + 1, remaining - v, flat, visit);
    }
}

}  // namespace

void enumerate_fixed_row_sums(std::span<const long long> row_sums,
                              const std::function<void(const confusion_matrix&)>& visit) {
    // Validation identical to enumeration_count's, without a cap.
    enumeration_count(row_sums, ~0ULL - 1);
    std::vector<long long> flat(row_sums.size() * row_sums.size(), 0);
    enumerate_rows(row_sums, 0, 0, row_sums[0], flat, visit);
}

enumerate_compare_result enumerate_compare(std::span<const long long> row_sums, measure f,
                                           measure g, double tie_tolerance,
                                           unsigned long long pair_budget) {
    if (f == g) throw validation_error("measures f and g must differ");
    const unsigned long long count = enumeration_count(row_sums, ~0ULL - 1);
    const unsigned long long pairs = static_cast<unsigned long long>(
        std::min<__uint128_t>(static_cast<__uint128_t>(count) * (count - 1) / 2, ~0ULL));
    if (pairs > pair_budget)
        throw budget_error("domain of " + std::to_string(count) + " matrices needs " +
                           std::to_string(pairs) + " pairs, over the budget of " +
                           std::to_string(pair_budget));

    const auto eval = [](measure m, const confusion_matrix& c) {
        switch (m) {
            case measure::mcc: return mcc(c);
            case measure::cen: return -cen(c);  // quality orientation
            case measure::acc: return accuracy(c);
        }
        return 0.0;
    };
    std::vector<double> fv, gv;
    fv.reserve(count);
    gv.reserve(count);
    enumerate_fixed_row_sums(row_sums, [&](const confusion_matrix& c) {
        fv.push_back(eval(f, c));
        gv.push_back(eval(g, c));
    });
    enumerate_compare_result out;
    out.domain_size = count;
    out.pair_count = pairs;
    out.deg = degrees(fv, gv, tie_tolerance);
    return out;
}

}  // namespace mcen
