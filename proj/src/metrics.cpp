#include "metrics.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace mcen {

double accuracy(const confusion_matrix& c) {
    return static_cast<double>(c.trace()) / static_cast<double>(c.total());
}

double mcc(const confusion_matrix& c) {
    const double s = static_cast<double>(c.total());
    const double tr = static_cast<double>(c.trace());
    double dot = 0.0, p2 = 0.0, t2 = 0.0;
    for (int k = 0; k < c.n(); ++k) {
        const double pk = static_cast<double>(c.col_sum(k));
        const double tk = static_cast<double>(c.row_sum(k));
        dot += pk * tk;
        p2 += pk * pk;
        t2 += tk * tk;
    }
    const double num = tr * s - dot;
    const double d1 = s * s - p2;
    const double d2 = s * s - t2;
    if (d1 <= 0.0 || d2 <= 0.0) return 0.0;
    // perfect classification: num == d1 == d2 analytically, avoid the
    // quotient's last-ulp wobble
    if (c.trace() == c.total()) return 1.0;
    return std::clamp(num / (std::sqrt(d1) * std::sqrt(d2)), -1.0, 1.0);
}

double cen(const confusion_matrix& c) {
    const int n = c.n();
    const double s = static_cast<double>(c.total());
    const double log_base = std::log(2.0 * (n - 1));
    double out = 0.0;
    for (int j = 0; j < n; ++j) {
        const long long denom = c.row_sum(j) + c.col_sum(j);
        if (denom == 0) continue;  // class j absent from both margins
        const double dj = static_cast<double>(denom);
        const double pj = dj / (2.0 * s);
        double inner = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            const long long jk = c(j, k), kj = c(k, j);
            if (jk > 0) {
                const double p = static_cast<double>(jk) / dj;
                inner -= p * std::log(p) / log_base;
            }
            if (kj > 0) {
                const double p = static_cast<double>(kj) / dj;
                inner -= p * std::log(p) / log_base;
            }
        }
        out += pj * inner;
    }
    return out;
}

double k_factor(int n) {
    if (n < 3)
        throw validation_error("k_factor requires at least 3 classes, got " + std::to_string(n));
    const double ln = std::log(static_cast<double>(n));
    return 1.012 * (1.0 + 0.18924 / ln - 0.06694 / (ln * ln));
}

double tmcc(const confusion_matrix& c) {
    const int n = c.n();
    if (n < 3)
        throw validation_error("tmcc requires at least 3 classes, got " + std::to_string(n));
    if (c.trace() == c.total()) return 0.0;  // perfect accuracy: log(0) short-circuit
    const double acc = accuracy(c);
    const double log_base = std::log(2.0 * (n - 1));
    return (1.0 - mcc(c)) * (1.0 - std::log(1.0 - acc) / log_base) * (1.0 - 1.0 / n);
}

double mcc_binary(const confusion_matrix& c) {
    if (c.n() != 2)
        throw validation_error("mcc_binary requires a 2x2 matrix, got n=" + std::to_string(c.n()));
    const double tp = static_cast<double>(c(0, 0)), fn = static_cast<double>(c(0, 1));
    const double fp = static_cast<double>(c(1, 0)), tn = static_cast<double>(c(1, 1));
    const double den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (den <= 0.0) return 0.0;
    return (tp * tn - fp * fn) / std::sqrt(den);
}

double cen_binary(const confusion_matrix& c) {
    if (c.n() != 2)
        throw validation_error("cen_binary requires a 2x2 matrix, got n=" + std::to_string(c.n()));
    const double tp = static_cast<double>(c(0, 0)), fn = static_cast<double>(c(0, 1));
    const double fp = static_cast<double>(c(1, 0)), tn = static_cast<double>(c(1, 1));
    if (fn + fp == 0.0) return 0.0;  // perfect classification
    const double s = tp + tn + fp + fn;
    double out = (fn + fp) * std::log2(s * s - (tp - tn) * (tp - tn)) / (2.0 * s);
    if (fn > 0.0) out -= fn * std::log2(fn) / s;
    if (fp > 0.0) out -= fp * std::log2(fp) / s;
    return out;
}

metric_report compute_report(const confusion_matrix& c) {
    metric_report r;
    r.n = c.n();
    r.total = c.total();
    r.acc = accuracy(c);
    r.mcc = mcc(c);
    r.cen = cen(c);
    if (c.n() >= 3) {
        r.tmcc = tmcc(c);
        r.k_cen = k_factor(c.n()) * r.cen;
        r.has_tmcc = true;
    }
    return r;
}

}  // namespace mcen
