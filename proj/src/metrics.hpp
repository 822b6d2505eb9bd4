#pragma once

#include <cmath>
#include <limits>

#include "matrix.hpp"

namespace mcen {

// All scalar measures for one matrix. tmcc and k_cen require n >= 3; for
// binary matrices they are left NaN with has_tmcc = false.
struct metric_report {
    double acc = 0;
    double mcc = 0;
    double cen = 0;
    double tmcc = std::numeric_limits<double>::quiet_NaN();
    double k_cen = std::numeric_limits<double>::quiet_NaN();
    bool has_tmcc = false;
    int n = 0;
    long long total = 0;
};

// Fraction of correctly classified samples, trace/total.
double accuracy(const confusion_matrix& c);

// Multi-class Matthews correlation coefficient. By convention returns 0 when
// either square-root factor of the denominator vanishes (e.g. all samples
// predicted into a single class, or all entries equal).
double mcc(const confusion_matrix& c);

// Confusion entropy: per-class misclassification entropies with logarithm
// base 2(N-1), weighted by class probabilities P_j. A class whose row and
// column are entirely zero contributes nothing.
double cen(const confusion_matrix& c);

// Dimension-dependent calibration constant 1.012*(1 + 0.18924/ln n - 0.06694/ln^2 n).
// Requires n >= 3.
double k_factor(int n);

// Transformed MCC: (1-MCC)*(1 - log_{2N-2}(1-ACC))*(1-1/N), compared against
// k_factor(n)*cen in the Monte-Carlo study. Returns 0 for perfect accuracy.
// Requires n >= 3.
double tmcc(const confusion_matrix& c);

// Closed forms for 2x2 matrices laid out as [[TP, FN], [FP, TN]].
double mcc_binary(const confusion_matrix& c);
double cen_binary(const confusion_matrix& c);

metric_report compute_report(const confusion_matrix& c);

}  // namespace mcen
