#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace mcen {

// Monte-Carlo study configuration. Defaults reproduce the published protocol:
// 200,000 matrices, dimensions uniform in {3..30}, diagonal entries uniform in
// [1, 1000], one ratio rho ~ U[0.01, 1] per matrix, off-diagonal entries
// uniform in [1, floor(1000*rho)].
struct experiment_config {
    long long n_matrices = 200000;
    int dim_min = 3;
    int dim_max = 30;
    long long diag_max = 1000;
    double rho_min = 0.01;
    double rho_max = 1.0;
    uint64_t seed = 42;
    long long bootstrap_resamples = 10000;
    double bootstrap_level = 0.95;
    unsigned long long pair_sample = 100000000ULL;  // consistency subsample size
    int jobs = 0;                                   // 0 = hardware concurrency

    void validate() const;  // throws validation_error
};

// One matrix's metrics; the scatter-plot coordinates are (tmcc, k_cen).
// ratio = tmcc / k_cen, NaN when cen == 0 (flagged, never divided).
struct experiment_record {
    long long index = 0;
    int n = 0;
    double acc = 0, mcc = 0, cen = 0, k_cen = 0, tmcc = 0, ratio = 0;
};

struct experiment_summary {
    std::optional<double> pearson_r;      // undefined below 2 records / zero variance
    std::optional<double> consistency;    // undefined when no strictly-ordered pairs
    std::optional<double> discriminancy;  // undefined when no g-only ties (the usual case)
    std::optional<double> mean_ratio;
    std::optional<double> ci_lo, ci_hi;   // bootstrap CI of mean_ratio
    std::optional<double> mean_ratio_unk; // mean of tmcc/cen, without the k factor
    long long zero_cen_count = 0;
    long long n_matrices = 0;
    uint64_t seed = 0;
    // Loose always-on band (evaluated for runs of >= 10,000 matrices):
    // pearson_r >= 0.98 and mean_ratio in [0.99, 1.01].
    bool sanity_band_evaluated = false;
    bool sanity_band_ok = true;
};

// Draw one matrix from the protocol. The caller draws the dimension from the
// same stream first; this function then draws rho and the entries row-major.
confusion_matrix generate_matrix(std::mt19937_64& g, int n, const experiment_config& cfg);

// Single-pass aggregation in record-index order: streaming Pearson (Welford),
// compensated ratio means (Neumaier), and a bounded reservoir feeding the
// bootstrap and the consistency pair sample. Feeding records in index order
// makes the summary independent of how the records were produced.
class summarizer {
public:
    explicit summarizer(const experiment_config& cfg);
    void add(const experiment_record& rec);
    experiment_summary finish();

private:
    experiment_config cfg_;
    long long count_ = 0;
    // bivariate Welford over (tmcc, k_cen)
    double mean_x_ = 0, mean_y_ = 0, m2x_ = 0, m2y_ = 0, cxy_ = 0;
    // Neumaier sums
    double ratio_sum_ = 0, ratio_comp_ = 0;
    double unk_sum_ = 0, unk_comp_ = 0;
    long long ratio_count_ = 0;
    long long zero_cen_ = 0;
    // reservoir over records with a finite ratio
    size_t reservoir_cap_;
    long long reservoir_seen_ = 0;
    std::vector<double> res_ratio_, res_tmcc_, res_kcen_;
};

// Run the full study. Records stream to records_csv_path (empty = skip) as
// CSV with header "index,n,acc,mcc,cen,k_cen,tmcc,ratio" and full-precision
// values; the summary document goes to summary_json_path (empty = skip).
// Byte-identical output for identical configs regardless of jobs.
experiment_summary run_experiment(const experiment_config& cfg,
                                  const std::string& records_csv_path,
                                  const std::string& summary_json_path);

// Reload a records CSV written by run_experiment.
std::vector<experiment_record> read_records_csv(const std::string& path);

void write_summary_json(const experiment_summary& summary, const experiment_config& cfg,
                        std::ostream& out);

inline constexpr const char* records_csv_header = "index,n,acc,mcc,cen,k_cen,tmcc,ratio";

}  // namespace mcen
