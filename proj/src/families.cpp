#include "families.hpp"

#include <cmath>

namespace mcen::families {

namespace {

void require_n(int n) {
    if (n < 3)
        throw validation_error("family requires at least 3 classes, got " + std::to_string(n));
}

void require_a(long long a) {
    if (a < 1) throw validation_error("parameter a must be at least 1, got " + std::to_string(a));
}

double log_b(int n, double x) { return std::log(x) / std::log(2.0 * (n - 1)); }

}  // namespace

confusion_matrix make_matrix(const params& p) {
    require_n(p.n);
    const size_t n = static_cast<size_t>(p.n);
    std::vector<long long> flat(n * n, 1);
    switch (p.family) {
        case kind::za:
            require_a(p.a);
            flat[(n - 1) * n] = p.a;  // lower-left corner
            break;
        case kind::unbalanced:
            require_a(p.a);
            for (size_t j = 0; j < n; ++j) flat[(n - 1) * n + j] = p.a;
            break;
        case kind::diag_b: {
            if (p.t < 0 || p.f < 0)
                throw validation_error("parameters t and f must be nonnegative, got t=" +
                                       std::to_string(p.t) + " f=" + std::to_string(p.f));
            if (p.t + p.f == 0)
                throw validation_error("parameters t and f cannot both be zero");
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) flat[i * n + j] = (i == j) ? p.t : p.f;
            break;
        }
        case kind::uniform:
            break;
    }
    return confusion_matrix::from_entries(p.n, std::move(flat));
}

double mcc_za_closed(int n, long long a) {
    require_n(n);
    require_a(a);
    const double nn = static_cast<double>(n);
    return -static_cast<double>(a - 1) / ((nn - 1.0) * (nn * nn + 2.0 * a - 2.0));
}

double cen_za_closed(int n, long long a) {
    require_n(n);
    require_a(a);
    const double nn = static_cast<double>(n);
    const double aa = static_cast<double>(a);
    const double num = (nn - 2.0) * (nn - 1.0) * log_b(n, 2.0 * nn) +
                       (2.0 * nn + aa - 3.0) * log_b(n, 2.0 * nn + aa - 1.0) -
                       aa * log_b(n, aa);
    return num / (nn * nn + aa - 1.0);
}

double acc_za_closed(int n, long long a) {
    require_n(n);
    require_a(a);
    const double nn = static_cast<double>(n);
    return nn / (nn * nn + static_cast<double>(a) - 1.0);
}

double cen_unbalanced_closed(int n, long long a) {
    require_n(n);
    require_a(a);
    const double nn = static_cast<double>(n);
    const double aa = static_cast<double>(a);
    const double bracket = (2.0 * nn + aa - 3.0) * log_b(n, 2.0 * nn + aa - 1.0) -
                           2.0 * aa * log_b(n, aa) +
                           (aa + 1.0) * log_b(n, nn + nn * aa + aa - 1.0);
    return (nn - 1.0) / (2.0 * nn * (nn + aa - 1.0)) * bracket;
}

double cen_unbalanced_limit(int n) {
    require_n(n);
    const double nn = static_cast<double>(n);
    return (nn - 1.0) / (2.0 * nn) * log_b(n, nn + 1.0);
}

double mcc_b_closed(int n, long long t, long long f) {
    require_n(n);
    if (t < 0 || f < 0 || t + f == 0)
        throw validation_error("diag_b requires nonnegative t, f with t+f >= 1");
    if (f == 0) return 1.0;  // perfect classification
    const double nn = static_cast<double>(n);
    const double tt = static_cast<double>(t), ff = static_cast<double>(f);
    const double r = tt + (nn - 1.0) * ff;
    return (tt * tt + (nn - 2.0) * tt * ff - (nn - 1.0) * ff * ff) / (r * r);
}

double cen_b_closed(int n, long long t, long long f) {
    require_n(n);
    if (t < 0 || f < 0 || t + f == 0)
        throw validation_error("diag_b requires nonnegative t, f with t+f >= 1");
    if (f == 0) return 0.0;  // perfect classification
    const double nn = static_cast<double>(n);
    const double tt = static_cast<double>(t), ff = static_cast<double>(f);
    const double r = tt + (nn - 1.0) * ff;
    return (nn - 1.0) * ff / r * log_b(n, 2.0 * r / ff);
}

double cen_identity_b(int n, long long t, long long f) {
    require_n(n);
    if (t < 0 || f < 0 || t + f == 0)
        throw validation_error("diag_b requires nonnegative t, f with t+f >= 1");
    if (f == 0) return 0.0;
    const double nn = static_cast<double>(n);
    const double tt = static_cast<double>(t), ff = static_cast<double>(f);
    const double r = tt + (nn - 1.0) * ff;
    return (1.0 - mcc_b_closed(n, t, f)) * (1.0 + log_b(n, r / ((nn - 1.0) * ff))) *
           (1.0 - 1.0 / nn);
}

double cen_uniform(int n) {
    require_n(n);
    const double nn = static_cast<double>(n);
    return (1.0 - 1.0 / nn) * log_b(n, 2.0 * nn);
}

}  // namespace mcen::families
