#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>

#include "matrix.hpp"

namespace mcen {

// Pair classification of two measures f, g over the same objects, following
// the degree-of-consistency / degree-of-discriminancy definitions. Unordered
// object pairs; |delta| <= tie_tolerance counts as a tie.
//   P: f differs, g ties      Q: f ties, g differs
//   R: both differ, same direction      S: both differ, opposite directions
struct degrees_result {
    unsigned long long p = 0, q = 0, r = 0, s = 0;
    std::optional<double> consistency;   // r/(r+s), defined when r+s > 0
    std::optional<double> discriminancy; // p/q, defined when q > 0
    double tie_tolerance = 0;
};

// Inputs must already be oriented larger-is-better (negate CEN before calling).
degrees_result degrees(std::span<const double> f_values, std::span<const double> g_values,
                       double tie_tolerance);

// Sample Pearson correlation, two-pass. Throws on length < 2 or zero variance.
double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

struct bootstrap_ci {
    double lo = 0, hi = 0, mean = 0;
};

// Studentized bootstrap CI of the mean: resample with replacement, form
// t = (mean* - mean)/se*, take the level-quantiles of t (linear interpolation)
// and invert around the sample mean. Throws if all values are identical.
// Resamples whose resampled se is zero cannot be studentized and are skipped.
bootstrap_ci bootstrap_mean_ci(std::span<const double> values, long long n_resamples,
                               double level, uint64_t seed);

// Number of matrices with the given row sums: product over rows of the weak
// composition count C(k+N-1, N-1). Throws budget_error if it exceeds cap.
unsigned long long enumeration_count(std::span<const long long> row_sums, unsigned long long cap);

// Visit every matrix whose row i sums to row_sums[i], exactly once, in
// lexicographic order with each row's leftmost part descending.
void enumerate_fixed_row_sums(std::span<const long long> row_sums,
                              const std::function<void(const confusion_matrix&)>& visit);

enum class measure { mcc, cen, acc };

struct enumerate_compare_result {
    degrees_result deg;
    unsigned long long domain_size = 0;
    unsigned long long pair_count = 0;
};

// Enumerate the fixed-row-sum domain and classify all unordered pairs for the
// measure pair (f, g). CEN enters negated so that every measure is oriented
// larger-is-better. Refuses (budget_error) if the pair count exceeds
// pair_budget rather than sampling silently.
enumerate_compare_result enumerate_compare(std::span<const long long> row_sums, measure f,
                                           measure g, double tie_tolerance,
                                           unsigned long long pair_budget);

}  // namespace mcen
