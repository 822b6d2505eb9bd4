#pragma once

#include "matrix.hpp"

namespace mcen::families {

// Analytic matrix families with closed-form MCC/CEN expressions, used as
// independent oracles against the direct metrics.
//
//   za:         all ones except entry (N,1) = A      ("Z_A")
//   unbalanced: all ones except the last row, all A
//   diag_b:     T on the diagonal, F elsewhere       ("B(T,F)")
//   uniform:    all entries equal
enum class kind { za, unbalanced, diag_b, uniform };

struct params {
    kind family = kind::uniform;
    int n = 3;
    long long a = 1;  // za / unbalanced
    long long t = 0;  // diag_b
    long long f = 0;  // diag_b
};

confusion_matrix make_matrix(const params& p);

// MCC(Z_A) = -(A-1) / ((N-1)(N^2+2A-2)). The denominator sign is the verified
// correction: direct evaluation at (n=3, a=3) gives -1/13, which the variant
// with -2A does not reproduce.
double mcc_za_closed(int n, long long a);
double cen_za_closed(int n, long long a);
double acc_za_closed(int n, long long a);  // N / (N^2 + A - 1)

double cen_unbalanced_closed(int n, long long a);
// Limit for a -> infinity: ((N-1)/(2N)) * log_{2N-2}(N+1).
double cen_unbalanced_limit(int n);

// f = 0 is the perfect-classification case: mcc 1, cen 0 (closed forms would
// divide by F).
double mcc_b_closed(int n, long long t, long long f);
double cen_b_closed(int n, long long t, long long f);
// (1 - MCC)(1 + log_{2N-2}(R/((N-1)F)))(1 - 1/N) with R = T+(N-1)F; equals
// cen_b_closed exactly (algebraic identity), the exact precursor of tmcc.
double cen_identity_b(int n, long long t, long long f);

// CEN of the all-equal matrix: (1 - 1/N) log_{2N-2}(2N).
double cen_uniform(int n);

}  // namespace mcen::families
