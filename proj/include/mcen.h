/* mcen: multi-class classifier performance measures.
 *
 * C interface to the mcen shared library. All functions return an
 * mcen_status; results go to out-parameters. On any failure a thread-local
 * message is set, readable via mcen_last_error().
 *
 * Conventions: confusion matrix entry (i, j) counts samples of true class i
 * predicted as class j. Binary layout is [[TP, FN], [FP, TN]].
 */
#ifndef MCEN_H
#define MCEN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mcen_status {
    MCEN_OK = 0,
    MCEN_ERR_VALIDATION = 1, /* bad argument or domain violation */
    MCEN_ERR_PARSE = 2,      /* malformed input text */
    MCEN_ERR_IO = 3,         /* file not readable/writable */
    MCEN_ERR_BUDGET = 4,     /* enumeration or pair count over budget */
    MCEN_ERR_INTERNAL = 5    /* unexpected failure */
} mcen_status;

/* Thread-local message for the most recent failure on this thread.
 * Never NULL; empty string when no failure has occurred. */
const char* mcen_last_error(void);

/* Stable name for a status code, e.g. "MCEN_ERR_VALIDATION". */
const char* mcen_status_name(mcen_status status);

/* Identifier of the deterministic RNG scheme used by seeded routines. */
const char* mcen_rng_identifier(void);

/* ------------------------------------------------------------------ */
/* Confusion matrices                                                  */

typedef struct mcen_matrix mcen_matrix; /* opaque */

/* n-by-n matrix from row-major nonnegative counts with a positive total. */
mcen_status mcen_matrix_from_entries(int32_t n, const int64_t* row_major,
                                     mcen_matrix** out);

/* Tally 1-based label pairs into an n_classes-by-n_classes matrix. */
mcen_status mcen_matrix_from_label_pairs(const int32_t* true_labels,
                                         const int32_t* predicted_labels,
                                         size_t n_pairs, int32_t n_classes,
                                         mcen_matrix** out);

/* Read a square CSV of counts (one row per line). */
mcen_status mcen_matrix_read_csv(const char* path, mcen_matrix** out);

mcen_status mcen_matrix_write_csv(const mcen_matrix* m, const char* path);

/* New matrix with every entry multiplied by factor >= 1. */
mcen_status mcen_matrix_scale(const mcen_matrix* m, int64_t factor,
                              mcen_matrix** out);

/* Accessors return the value directly; entry/row_sum/col_sum return -1 when
 * an index is out of range (entries themselves are never negative). */
int32_t mcen_matrix_n(const mcen_matrix* m);
int64_t mcen_matrix_entry(const mcen_matrix* m, int32_t i, int32_t j);
int64_t mcen_matrix_total(const mcen_matrix* m);
int64_t mcen_matrix_trace(const mcen_matrix* m);
int64_t mcen_matrix_row_sum(const mcen_matrix* m, int32_t i);
int64_t mcen_matrix_col_sum(const mcen_matrix* m, int32_t j);

void mcen_matrix_free(mcen_matrix* m);

/* ------------------------------------------------------------------ */
/* Measures                                                            */

typedef struct mcen_metric_report {
    double acc;
    double mcc;
    double cen;
    double tmcc;  /* NaN when has_tmcc is 0 */
    double k_cen; /* NaN when has_tmcc is 0 */
    int32_t has_tmcc; /* 0 for 2-class matrices (transform needs >= 3) */
    int32_t n;
    int64_t total;
} mcen_metric_report;

mcen_status mcen_compute_report(const mcen_matrix* m, mcen_metric_report* out);

mcen_status mcen_accuracy(const mcen_matrix* m, double* out);
mcen_status mcen_mcc(const mcen_matrix* m, double* out);
mcen_status mcen_cen(const mcen_matrix* m, double* out);
mcen_status mcen_tmcc(const mcen_matrix* m, double* out); /* needs n >= 3 */

/* Correction factor k(n) for n >= 3 classes. */
mcen_status mcen_k_factor(int32_t n, double* out);

/* Closed forms for 2-by-2 matrices [[TP, FN], [FP, TN]]. */
mcen_status mcen_mcc_binary(const mcen_matrix* m, double* out);
mcen_status mcen_cen_binary(const mcen_matrix* m, double* out);

/* ------------------------------------------------------------------ */
/* Analytic families and their closed forms                            */

typedef enum mcen_family_kind {
    MCEN_FAMILY_ZA = 0,         /* all ones, one corner entry raised to a */
    MCEN_FAMILY_UNBALANCED = 1, /* all ones, last row raised to a */
    MCEN_FAMILY_DIAG_B = 2,     /* t on the diagonal, f elsewhere */
    MCEN_FAMILY_UNIFORM = 3     /* all ones */
} mcen_family_kind;

typedef struct mcen_family_params {
    mcen_family_kind family;
    int32_t n;  /* classes, >= 3 */
    int64_t a;  /* ZA / UNBALANCED level, >= 1 */
    int64_t t;  /* DIAG_B diagonal entry, >= 0 */
    int64_t f;  /* DIAG_B off-diagonal entry, >= 0, t + f >= 1 */
} mcen_family_params;

mcen_status mcen_family_matrix(const mcen_family_params* params, mcen_matrix** out);

mcen_status mcen_mcc_za_closed(int32_t n, int64_t a, double* out);
mcen_status mcen_cen_za_closed(int32_t n, int64_t a, double* out);
mcen_status mcen_acc_za_closed(int32_t n, int64_t a, double* out);
mcen_status mcen_cen_unbalanced_closed(int32_t n, int64_t a, double* out);
/* Limit of the unbalanced closed form as a grows without bound. */
mcen_status mcen_cen_unbalanced_limit(int32_t n, double* out);
mcen_status mcen_mcc_b_closed(int32_t n, int64_t t, int64_t f, double* out);
mcen_status mcen_cen_b_closed(int32_t n, int64_t t, int64_t f, double* out);
/* CEN of the diagonal family via its exact identity in MCC. */
mcen_status mcen_cen_identity_b(int32_t n, int64_t t, int64_t f, double* out);
mcen_status mcen_cen_uniform(int32_t n, double* out);

/* ------------------------------------------------------------------ */
/* Comparing measures                                                  */

typedef struct mcen_degrees_result {
    /* Over unordered pairs: p = f separates / g ties, q = g separates /
     * f ties, r = both separate and agree, s = both separate and disagree.
     * Pairs tied under both measures are counted nowhere. */
    uint64_t p, q, r, s;
    double consistency;    /* r / (r + s); NaN when r + s == 0 */
    double discriminancy;  /* p / q; NaN when q == 0 */
    int32_t has_consistency;
    int32_t has_discriminancy;
} mcen_degrees_result;

mcen_status mcen_degrees(const double* f_values, const double* g_values,
                         size_t n_values, double tie_tolerance,
                         mcen_degrees_result* out);

mcen_status mcen_pearson(const double* xs, const double* ys, size_t n,
                         double* out);

/* Studentized bootstrap confidence interval for the mean. */
mcen_status mcen_bootstrap_mean_ci(const double* values, size_t n_values,
                                   int64_t n_resamples, double level,
                                   uint64_t seed, double* out_lo,
                                   double* out_hi);

/* Number of n-class matrices with the given row sums (error over cap). */
mcen_status mcen_enumeration_count(const int64_t* row_sums, size_t n_rows,
                                   uint64_t cap, uint64_t* out);

typedef enum mcen_measure {
    MCEN_MEASURE_MCC = 0,
    MCEN_MEASURE_CEN = 1,
    MCEN_MEASURE_ACC = 2
} mcen_measure;

typedef struct mcen_enumerate_compare_result {
    mcen_degrees_result degrees;
    uint64_t domain_size;
    uint64_t pair_count;
} mcen_enumerate_compare_result;

/* Exhaustively enumerate the matrices with the given row sums and compare
 * two measures over every unordered pair. CEN is compared with its sense
 * flipped so all measures agree that larger is better. */
mcen_status mcen_enumerate_compare(const int64_t* row_sums, size_t n_rows,
                                   mcen_measure f, mcen_measure g,
                                   double tie_tolerance, uint64_t pair_budget,
                                   mcen_enumerate_compare_result* out);

/* ------------------------------------------------------------------ */
/* Monte-Carlo study                                                   */

typedef struct mcen_experiment_config {
    int64_t n_matrices;
    int32_t dim_min;
    int32_t dim_max;
    int64_t diag_max;
    double rho_min;
    double rho_max;
    uint64_t seed;
    int64_t bootstrap_resamples;
    double bootstrap_level;
    uint64_t pair_sample;
    int32_t jobs; /* 0 = use all hardware threads */
} mcen_experiment_config;

/* Fill cfg with the default protocol (200,000 matrices, dims 3..30,
 * diagonal max 1000, rho in [0.01, 1], seed 42). */
void mcen_experiment_config_default(mcen_experiment_config* cfg);

typedef struct mcen_experiment_summary {
    double pearson_r;
    double consistency;
    double discriminancy;
    double mean_ratio;
    double ci_lo, ci_hi;
    double mean_ratio_unk;
    int32_t has_pearson_r, has_consistency, has_discriminancy;
    int32_t has_mean_ratio, has_ci, has_mean_ratio_unk;
    int64_t zero_cen_count;
    int64_t n_matrices;
    uint64_t seed;
    int32_t sanity_band_evaluated;
    int32_t sanity_band_ok;
} mcen_experiment_summary;

/* Run the study. records_csv_path / summary_json_path may be NULL to skip
 * writing that file. Output is byte-identical for a given config no matter
 * how many jobs run. */
mcen_status mcen_experiment_run(const mcen_experiment_config* cfg,
                                const char* records_csv_path,
                                const char* summary_json_path,
                                mcen_experiment_summary* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MCEN_H */
