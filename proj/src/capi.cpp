#include "../include/mcen.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "comparison.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "families.hpp"
#include "matrix.hpp"
#include "metrics.hpp"
#include "rng.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Every entry point funnels through here so exceptions map to status codes
// uniformly and the thread-local message stays in sync.
template <typename Fn>
mcen_status wrap(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return MCEN_OK;
    } catch (const mcen::validation_error& e) {
        set_error(e.what());
        return MCEN_ERR_VALIDATION;
    } catch (const mcen::parse_error& e) {
        set_error(e.what());
        return MCEN_ERR_PARSE;
    } catch (const mcen::io_error& e) {
        set_error(e.what());
        return MCEN_ERR_IO;
    } catch (const mcen::budget_error& e) {
        set_error(e.what());
        return MCEN_ERR_BUDGET;
    } catch (const std::exception& e) {
        set_error(e.what());
        return MCEN_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown failure");
        return MCEN_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok)
        throw mcen::validation_error(what);
}

const mcen::confusion_matrix& unwrap(const mcen_matrix* m) {
    require(m != nullptr, "matrix pointer is null");
    return *reinterpret_cast<const mcen::confusion_matrix*>(m);
}

mcen_matrix* own(mcen::confusion_matrix&& cm) {
    return reinterpret_cast<mcen_matrix*>(new mcen::confusion_matrix(std::move(cm)));
}

}  // namespace

extern "C" {

const char* mcen_last_error(void) { return g_last_error.c_str(); }

const char* mcen_status_name(mcen_status status) {
    switch (status) {
        case MCEN_OK: return "MCEN_OK";
        case MCEN_ERR_VALIDATION: return "MCEN_ERR_VALIDATION";
        case MCEN_ERR_PARSE: return "MCEN_ERR_PARSE";
        case MCEN_ERR_IO: return "MCEN_ERR_IO";
        case MCEN_ERR_BUDGET: return "MCEN_ERR_BUDGET";
        case MCEN_ERR_INTERNAL: return "MCEN_ERR_INTERNAL";
    }
    return "MCEN_ERR_UNKNOWN";
}

const char* mcen_rng_identifier(void) { return mcen::rng::identifier; }

/* ---- matrices ----------------------------------------------------- */

mcen_status mcen_matrix_from_entries(int32_t n, const int64_t* row_major,
                                     mcen_matrix** out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        require(row_major != nullptr, "entries pointer is null");
        require(n >= 1, "matrix dimension must be at least 1");
        std::vector<long long> entries(row_major,
                                       row_major + static_cast<size_t>(n) * n);
        *out = own(mcen::confusion_matrix::from_entries(n, std::move(entries)));
    });
}

mcen_status mcen_matrix_from_label_pairs(const int32_t* true_labels,
                                         const int32_t* predicted_labels,
                                         size_t n_pairs, int32_t n_classes,
                                         mcen_matrix** out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        require(true_labels != nullptr && predicted_labels != nullptr,
                "label pointers are null");
        std::vector<int> t(true_labels, true_labels + n_pairs);
        std::vector<int> p(predicted_labels, predicted_labels + n_pairs);
        *out = own(mcen::confusion_matrix::from_label_pairs(t, p, n_classes));
    });
}

mcen_status mcen_matrix_read_csv(const char* path, mcen_matrix** out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        require(path != nullptr, "path is null");
        *out = own(mcen::confusion_matrix::read_csv_file(path));
    });
}

mcen_status mcen_matrix_write_csv(const mcen_matrix* m, const char* path) {
    return wrap([&] {
        require(path != nullptr, "path is null");
        unwrap(m).write_csv_file(path);
    });
}

mcen_status mcen_matrix_scale(const mcen_matrix* m, int64_t factor,
                              mcen_matrix** out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        *out = own(unwrap(m).scaled(factor));
    });
}

int32_t mcen_matrix_n(const mcen_matrix* m) {
    return m ? reinterpret_cast<const mcen::confusion_matrix*>(m)->n() : -1;
}

int64_t mcen_matrix_entry(const mcen_matrix* m, int32_t i, int32_t j) {
    if (!m)
        return -1;
    const auto* cm = reinterpret_cast<const mcen::confusion_matrix*>(m);
    if (i < 0 || j < 0 || i >= cm->n() || j >= cm->n())
        return -1;
    return (*cm)(i, j);
}

int64_t mcen_matrix_total(const mcen_matrix* m) {
    return m ? reinterpret_cast<const mcen::confusion_matrix*>(m)->total() : -1;
}

int64_t mcen_matrix_trace(const mcen_matrix* m) {
    return m ? reinterpret_cast<const mcen::confusion_matrix*>(m)->trace() : -1;
}

int64_t mcen_matrix_row_sum(const mcen_matrix* m, int32_t i) {
    if (!m)
        return -1;
    const auto* cm = reinterpret_cast<const mcen::confusion_matrix*>(m);
    if (i < 0 || i >= cm->n())
        return -1;
    return cm->row_sum(i);
}

int64_t mcen_matrix_col_sum(const mcen_matrix* m, int32_t j) {
    if (!m)
        return -1;
    const auto* cm = reinterpret_cast<const mcen::confusion_matrix*>(m);
    if (j < 0 || j >= cm->n())
        return -1;
    return cm->col_sum(j);
}

void mcen_matrix_free(mcen_matrix* m) {
    delete reinterpret_cast<mcen::confusion_matrix*>(m);
}

/* ---- measures ------------------------------------------------------ */

mcen_status mcen_compute_report(const mcen_matrix* m, mcen_metric_report* out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        const mcen::metric_report rep = mcen::compute_report(unwrap(m));
        out->acc = rep.acc;
        out->mcc = rep.mcc;
        out->cen = rep.cen;
        out->tmcc = rep.tmcc;
        out->k_cen = rep.k_cen;
        out->has_tmcc = rep.has_tmcc ? 1 : 0;
        out->n = rep.n;
        out->total = rep.total;
    });
}

#define MCEN_UNARY_METRIC(cname, cxxfn)                              \
    mcen_status cname(const mcen_matrix* m, double* out) {           \
        return wrap([&] {                                            \
            require(out != nullptr, "output pointer is null");       \
            *out = cxxfn(unwrap(m));                                 \
        });                                                          \
    }

MCEN_UNARY_METRIC(mcen_accuracy, mcen::accuracy)
MCEN_UNARY_METRIC(mcen_mcc, mcen::mcc)
MCEN_UNARY_METRIC(mcen_cen, mcen::cen)
MCEN_UNARY_METRIC(mcen_tmcc, mcen::tmcc)
MCEN_UNARY_METRIC(mcen_mcc_binary, mcen::mcc_binary)
MCEN_UNARY_METRIC(mcen_cen_binary, mcen::cen_binary)

#undef MCEN_UNARY_METRIC

mcen_status mcen_k_factor(int32_t n, double* out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        *out = mcen::k_factor(n);
    });
}

/* ---- families ------------------------------------------------------ */

mcen_status mcen_family_matrix(const mcen_family_params* params, mcen_matrix** out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        require(params != nullptr, "params pointer is null");
        mcen::families::params p;
        switch (params->family) {
            case MCEN_FAMILY_ZA: p.family = mcen::families::kind::za; break;
            case MCEN_FAMILY_UNBALANCED:
                p.family = mcen::families::kind::unbalanced;
                break;
            case MCEN_FAMILY_DIAG_B: p.family = mcen::families::kind::diag_b; break;
            case MCEN_FAMILY_UNIFORM: p.family = mcen::families::kind::uniform; break;
            default: throw mcen::validation_error("unknown family kind");
        }
        p.n = params->n;
        p.a = params->a;
        p.t = params->t;
        p.f = params->f;
        *out = own(mcen::families::make_matrix(p));
    });
}

#define MCEN_CLOSED_NA(cname, cxxfn)                                 \
    mcen_status cname(int32_t n, int64_t a, double* out) {           \
        return wrap([&] {                                            \
            require(out != nullptr, "output pointer is null");       \
            *out = mcen::families::cxxfn(n, a);                      \
        });                                                          \
    }

MCEN_CLOSED_NA(mcen_mcc_za_closed, mcc_za_closed)
MCEN_CLOSED_NA(mcen_cen_za_closed, cen_za_closed)
MCEN_CLOSED_NA(mcen_acc_za_closed, acc_za_closed)
MCEN_CLOSED_NA(mcen_cen_unbalanced_closed, cen_unbalanced_closed)

#undef MCEN_CLOSED_NA

mcen_status mcen_cen_unbalanced_limit(int32_t n, double* out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        *out = mcen::families::cen_unbalanced_limit(n);
    });
}

#define MCEN_CLOSED_NTF(cname, cxxfn)                                      \
    mcen_status cname(int32_t n, int64_t t, int64_t f, double* out) {      \
        return wrap([&] {                                                  \
            require(out != nullptr, "output pointer is null");             \
            *out = mcen::families::cxxfn(n, t, f);                         \
        });                                                                \
    }

MCEN_CLOSED_NTF(mcen_mcc_b_closed, mcc_b_closed)
MCEN_CLOSED_NTF(mcen_cen_b_closed, cen_b_closed)
MCEN_CLOSED_NTF(mcen_cen_identity_b, cen_identity_b)

#undef MCEN_CLOSED_NTF

mcen_status mcen_cen_uniform(int32_t n, double* out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        *out = mcen::families::cen_uniform(n);
    });
}

/* ---- comparisons --------------------------------------------------- */

namespace {

void fill_degrees(const mcen::degrees_result& d, mcen_degrees_result* out) {
    out->p = d.p;
    out->q = d.q;
    out->r = d.r;
    out->s = d.s;
    out->has_consistency = d.consistency.has_value() ? 1 : 0;
    out->has_discriminancy = d.discriminancy.has_value() ? 1 : 0;
    out->consistency =
        d.consistency.value_or(std::numeric_limits<double>::quiet_NaN());
    out->discriminancy =
        d.discriminancy.value_or(std::numeric_limits<double>::quiet_NaN());
}

mcen::measure to_measure(mcen_measure m) {
    switch (m) {
        case MCEN_MEASURE_MCC: return mcen::measure::mcc;
        case MCEN_MEASURE_CEN: return mcen::measure::cen;
        case MCEN_MEASURE_ACC: return mcen::measure::acc;
    }
    throw mcen::validation_error("unknown measure");
}

}  // namespace

mcen_status mcen_degrees(const double* f_values, const double* g_values,
                         size_t n_values, double tie_tolerance,
                         mcen_degrees_result* out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        require(f_values != nullptr && g_values != nullptr,
                "value pointers are null");
        const auto d = mcen::degrees({f_values, n_values}, {g_values, n_values},
                                     tie_tolerance);
        fill_degrees(d, out);
    });
}

mcen_status mcen_pearson(const double* xs, const double* ys, size_t n,
                         double* out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        require(xs != nullptr && ys != nullptr, "value pointers are null");
        *out = mcen::pearson_correlation({xs, n}, {ys, n});
    });
}

mcen_status mcen_bootstrap_mean_ci(const double* values, size_t n_values,
                                   int64_t n_resamples, double level,
                                   uint64_t seed, double* out_lo,
                                   double* out_hi) {
    return wrap([&] {
        require(out_lo != nullptr && out_hi != nullptr,
                "output pointers are null");
        require(values != nullptr, "values pointer is null");
        const auto ci =
            mcen::bootstrap_mean_ci({values, n_values}, n_resamples, level, seed);
        *out_lo = ci.lo;
        *out_hi = ci.hi;
    });
}

mcen_status mcen_enumeration_count(const int64_t* row_sums, size_t n_rows,
                                   uint64_t cap, uint64_t* out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        require(row_sums != nullptr, "row sums pointer is null");
        std::vector<long long> rows(row_sums, row_sums + n_rows);
        *out = mcen::enumeration_count(rows, cap);
    });
}

mcen_status mcen_enumerate_compare(const int64_t* row_sums, size_t n_rows,
                                   mcen_measure f, mcen_measure g,
                                   double tie_tolerance, uint64_t pair_budget,
                                   mcen_enumerate_compare_result* out) {
    return wrap([&] {
        require(out != nullptr, "output pointer is null");
        require(row_sums != nullptr, "row sums pointer is null");
        std::vector<long long> rows(row_sums, row_sums + n_rows);
        const auto res = mcen::enumerate_compare(rows, to_measure(f), to_measure(g),
                                                 tie_tolerance, pair_budget);
        fill_degrees(res.deg, &out->degrees);
        out->domain_size = res.domain_size;
        out->pair_count = res.pair_count;
    });
}

/* ---- experiment ----------------------------------------------------- */

void mcen_experiment_config_default(mcen_experiment_config* cfg) {
    if (!cfg)
        return;
    const mcen::experiment_config d;
    cfg->n_matrices = d.n_matrices;
    cfg->dim_min = d.dim_min;
    cfg->dim_max = d.dim_max;
    cfg->diag_max = d.diag_max;
    cfg->rho_min = d.rho_min;
    cfg->rho_max = d.rho_max;
    cfg->seed = d.seed;
    cfg->bootstrap_resamples = d.bootstrap_resamples;
    cfg->bootstrap_level = d.bootstrap_level;
    cfg->pair_sample = d.pair_sample;
    cfg->jobs = d.jobs;
}

mcen_status mcen_experiment_run(const mcen_experiment_config* cfg,
                                const char* records_csv_path,
                                const char* summary_json_path,
                                mcen_experiment_summary* out) {
    return wrap([&] {
        require(cfg != nullptr, "config pointer is null");
        mcen::experiment_config c;
        c.n_matrices = cfg->n_matrices;
        c.dim_min = cfg->dim_min;
        c.dim_max = cfg->dim_max;
        c.diag_max = cfg->diag_max;
        c.rho_min = cfg->rho_min;
        c.rho_max = cfg->rho_max;
        c.seed = cfg->seed;
        c.bootstrap_resamples = cfg->bootstrap_resamples;
        c.bootstrap_level = cfg->bootstrap_level;
        c.pair_sample = cfg->pair_sample;
        c.jobs = cfg->jobs;
        const mcen::experiment_summary s = mcen::run_experiment(
            c, records_csv_path ? records_csv_path : "",
            summary_json_path ? summary_json_path : "");
        if (!out)
            return;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out->has_pearson_r = s.pearson_r.has_value() ? 1 : 0;
        out->pearson_r = s.pearson_r.value_or(nan);
        out->has_consistency = s.consistency.has_value() ? 1 : 0;
        out->consistency = s.consistency.value_or(nan);
        out->has_discriminancy = s.discriminancy.has_value() ? 1 : 0;
        out->discriminancy = s.discriminancy.value_or(nan);
        out->has_mean_ratio = s.mean_ratio.has_value() ? 1 : 0;
        out->mean_ratio = s.mean_ratio.value_or(nan);
        out->has_ci = (s.ci_lo.has_value() && s.ci_hi.has_value()) ? 1 : 0;
        out->ci_lo = s.ci_lo.value_or(nan);
        out->ci_hi = s.ci_hi.value_or(nan);
        out->has_mean_ratio_unk = s.mean_ratio_unk.has_value() ? 1 : 0;
        out->mean_ratio_unk = s.mean_ratio_unk.value_or(nan);
        out->zero_cen_count = s.zero_cen_count;
        out->n_matrices = s.n_matrices;
        out->seed = s.seed;
        out->sanity_band_evaluated = s.sanity_band_evaluated ? 1 : 0;
        out->sanity_band_ok = s.sanity_band_ok ? 1 : 0;
    });
}

} /* extern "C" */
