// mcen command-line tool: metric reports, analytic family checks,
// exhaustive measure comparison, and the Monte-Carlo study.
//
// Exit codes: 0 success, 2 bad usage/validation, 3 parse failure,
// 4 I/O failure, 5 budget exceeded, 6 numeric check failed.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcen.h"

namespace {

struct fatal {
    int code;
};

bool g_full_precision = false;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), g_full_precision ? "%.17g" : "%.7g", v);
    return buf;
}

int exit_code_for(mcen_status st) {
    switch (st) {
        case MCEN_OK: return 0;
        case MCEN_ERR_VALIDATION: return 2;
        case MCEN_ERR_PARSE: return 3;
        case MCEN_ERR_IO: return 4;
        case MCEN_ERR_BUDGET: return 5;
        case MCEN_ERR_INTERNAL: return 1;
    }
    return 1;
}

void check(mcen_status st) {
    if (st == MCEN_OK)
        return;
    std::cerr << "error: " << mcen_last_error() << " [" << mcen_status_name(st)
              << "]\n";
    throw fatal{exit_code_for(st)};
}

[[noreturn]] void usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    throw fatal{2};
}

struct matrix_handle {
    mcen_matrix* m = nullptr;
    ~matrix_handle() { mcen_matrix_free(m); }
};

// ---- compute -----------------------------------------------------------

struct compute_args {
    std::string csv_path;
    bool binary_closed_form = false;
};

int run_compute(const compute_args& args) {
    matrix_handle h;
    check(mcen_matrix_read_csv(args.csv_path.c_str(), &h.m));

    mcen_metric_report rep{};
    check(mcen_compute_report(h.m, &rep));

    std::cout << "n: " << rep.n << "\n";
    std::cout << "total: " << rep.total << "\n";
    std::cout << "acc: " << num(rep.acc) << "\n";
    std::cout << "mcc: " << num(rep.mcc) << "\n";
    std::cout << "cen: " << num(rep.cen) << "\n";
    if (rep.has_tmcc) {
        std::cout << "k_cen: " << num(rep.k_cen) << "\n";
        std::cout << "tmcc: " << num(rep.tmcc) << "\n";
    } else {
        std::cout << "k_cen: unavailable (needs at least 3 classes)\n";
        std::cout << "tmcc: unavailable (needs at least 3 classes)\n";
    }

    int rc = 0;
    if (args.binary_closed_form) {
        double mcc_b = 0, cen_b = 0;
        check(mcen_mcc_binary(h.m, &mcc_b));
        check(mcen_cen_binary(h.m, &cen_b));
        const double mcc_diff = std::fabs(mcc_b - rep.mcc);
        const double cen_diff = std::fabs(cen_b - rep.cen);
        std::cout << "mcc_binary: " << num(mcc_b) << " (diff " << num(mcc_diff)
                  << ")\n";
        std::cout << "cen_binary: " << num(cen_b) << " (diff " << num(cen_diff)
                  << ")\n";
        constexpr double tol = 1e-12;
        if (mcc_diff > tol || cen_diff > tol) {
            std::cerr << "check failed: closed binary forms disagree with the "
                         "general measures beyond "
                      << num(tol) << "\n";
            rc = 6;
        }
    }
    return rc;
}

// ---- family ------------------------------------------------------------

struct family_args {
    std::string kind;
    // positional values, meaning depends on the kind
    std::vector<long long> pos;
    long long n = -1, a = -1, t = -1, f = -1;  // -1 = not set
};

struct closed_row {
    const char* name;
    double closed;
    double direct;
};

int run_family(const family_args& args) {
    std::string kind = args.kind;
    for (auto& c : kind)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));

    mcen_family_params p{};
    p.a = 1;
    p.t = 0;
    p.f = 0;

    long long n = -1, a = -1, t = -1, f = -1;
    const auto& pos = args.pos;
    auto posval = [&pos](size_t i) -> long long {
        return i < pos.size() ? pos[i] : -1;
    };

    if (kind == "ZA" || kind == "UNBALANCED") {
        p.family = (kind == "ZA") ? MCEN_FAMILY_ZA : MCEN_FAMILY_UNBALANCED;
        if (pos.size() > 2)
            usage_error(kind + " takes at most two positional values: N A");
        n = posval(0);
        a = posval(1);
    } else if (kind == "DIAG_B") {
        p.family = MCEN_FAMILY_DIAG_B;
        if (pos.size() > 3)
            usage_error("DIAG_B takes at most three positional values: N T F");
        n = posval(0);
        t = posval(1);
        f = posval(2);
    } else if (kind == "UNIFORM") {
        p.family = MCEN_FAMILY_UNIFORM;
        if (pos.size() > 1)
            usage_error("UNIFORM takes at most one positional value: N");
        n = posval(0);
    } else {
        usage_error("unknown family '" + args.kind +
                    "' (expected ZA, UNBALANCED, DIAG_B, or UNIFORM)");
    }

    // named options override positionals
    if (args.n >= 0) n = args.n;
    if (args.a >= 0) a = args.a;
    if (args.t >= 0) t = args.t;
    if (args.f >= 0) f = args.f;

    if (n < 0)
        usage_error("family needs N (positional or --n)");
    p.n = static_cast<int32_t>(n);
    if (a >= 0) p.a = a;
    if (t >= 0) p.t = t;
    if (f >= 0) p.f = f;

    matrix_handle h;
    check(mcen_family_matrix(&p, &h.m));

    double direct_acc = 0, direct_mcc = 0, direct_cen = 0;
    check(mcen_accuracy(h.m, &direct_acc));
    check(mcen_mcc(h.m, &direct_mcc));
    check(mcen_cen(h.m, &direct_cen));

    std::vector<closed_row> rows;
    double v = 0;
    if (p.family == MCEN_FAMILY_ZA) {
        std::cout << "family: ZA n=" << p.n << " a=" << p.a << "\n";
        check(mcen_mcc_za_closed(p.n, p.a, &v));
        rows.push_back({"mcc", v, direct_mcc});
        check(mcen_cen_za_closed(p.n, p.a, &v));
        rows.push_back({"cen", v, direct_cen});
        check(mcen_acc_za_closed(p.n, p.a, &v));
        rows.push_back({"acc", v, direct_acc});
    } else if (p.family == MCEN_FAMILY_UNBALANCED) {
        std::cout << "family: UNBALANCED n=" << p.n << " a=" << p.a << "\n";
        check(mcen_cen_unbalanced_closed(p.n, p.a, &v));
        rows.push_back({"cen", v, direct_cen});
    } else if (p.family == MCEN_FAMILY_DIAG_B) {
        std::cout << "family: DIAG_B n=" << p.n << " t=" << p.t << " f=" << p.f
                  << "\n";
        check(mcen_mcc_b_closed(p.n, p.t, p.f, &v));
        rows.push_back({"mcc", v, direct_mcc});
        check(mcen_cen_b_closed(p.n, p.t, p.f, &v));
        rows.push_back({"cen", v, direct_cen});
        check(mcen_cen_identity_b(p.n, p.t, p.f, &v));
        rows.push_back({"cen_identity", v, direct_cen});
    } else {
        std::cout << "family: UNIFORM n=" << p.n << "\n";
        check(mcen_cen_uniform(p.n, &v));
        rows.push_back({"cen", v, direct_cen});
    }

    constexpr double tol = 1e-10;
    int rc = 0;
    for (const auto& row : rows) {
        const double diff = std::fabs(row.closed - row.direct);
        std::cout << row.name << ": closed " << num(row.closed) << ", direct "
                  << num(row.direct) << ", diff " << num(diff) << "\n";
        if (diff > tol) {
            std::cerr << "check failed: " << row.name
                      << " closed form disagrees with the direct measure by "
                      << num(diff) << " (tolerance " << num(tol) << ")\n";
            rc = 6;
        }
    }
    if (p.family == MCEN_FAMILY_UNBALANCED) {
        check(mcen_cen_unbalanced_limit(p.n, &v));
        std::cout << "cen limit (a -> inf): " << num(v) << "\n";
    }
    return rc;
}

// ---- enumerate-compare ---------------------------------------------------

struct enumerate_args {
    std::vector<long long> rows;
    std::string pair = "cen-mcc";
    double tie_tolerance = 1e-12;
    double pair_budget = 1e8;
};

mcen_measure parse_measure(const std::string& name) {
    if (name == "mcc") return MCEN_MEASURE_MCC;
    if (name == "cen") return MCEN_MEASURE_CEN;
    if (name == "acc") return MCEN_MEASURE_ACC;
    usage_error("unknown measure '" + name + "' (expected mcc, cen, or acc)");
}

int run_enumerate(const enumerate_args& args) {
    const auto dash = args.pair.find('-');
    if (dash == std::string::npos)
        usage_error("--pair must look like 'cen-mcc'");
    const mcen_measure f = parse_measure(args.pair.substr(0, dash));
    const mcen_measure g = parse_measure(args.pair.substr(dash + 1));
    if (f == g)
        usage_error("--pair needs two different measures");
    if (args.rows.empty())
        usage_error("--rows is required, e.g. --rows 2,4,3");
    if (!(args.pair_budget >= 1))
        usage_error("--pair-budget must be at least 1");

    std::vector<int64_t> rows(args.rows.begin(), args.rows.end());
    mcen_enumerate_compare_result res{};
    const auto budget = static_cast<uint64_t>(args.pair_budget);
    check(mcen_enumerate_compare(rows.data(), rows.size(), f, g,
                                 args.tie_tolerance, budget, &res));

    std::cout << "rows:";
    for (size_t i = 0; i < rows.size(); ++i)
        std::cout << (i ? "," : " ") << rows[i];
    std::cout << "\n";
    std::cout << "pair: " << args.pair << " (tie tolerance "
              << num(args.tie_tolerance) << ")\n";
    std::cout << "domain: " << res.domain_size << " matrices\n";
    std::cout << "pairs: " << res.pair_count << "\n";
    std::cout << "P: " << res.degrees.p << "\n";
    std::cout << "Q: " << res.degrees.q << "\n";
    std::cout << "R: " << res.degrees.r << "\n";
    std::cout << "S: " << res.degrees.s << "\n";
    if (res.degrees.has_consistency)
        std::cout << "consistency: " << num(res.degrees.consistency) << "\n";
    else
        std::cout << "consistency: undefined (R + S = 0)\n";
    if (res.degrees.has_discriminancy)
        std::cout << "discriminancy: " << num(res.degrees.discriminancy) << "\n";
    else
        std::cout << "discriminancy: undefined (Q = 0)\n";
    return 0;
}

// ---- experiment ------------------------------------------------------------

struct experiment_args {
    mcen_experiment_config cfg{};
    std::string records_out = "records.csv";
    std::string summary_out = "summary.json";
};

int run_experiment_cmd(const experiment_args& args) {
    mcen_experiment_summary s{};
    check(mcen_experiment_run(&args.cfg,
                              args.records_out.empty() ? nullptr
                                                       : args.records_out.c_str(),
                              args.summary_out.empty() ? nullptr
                                                       : args.summary_out.c_str(),
                              &s));

    std::cout << "n_matrices: " << s.n_matrices << "\n";
    std::cout << "seed: " << s.seed << "\n";
    std::cout << "rng: " << mcen_rng_identifier() << "\n";
    auto opt_line = [](const char* name, int has, double val,
                       const char* why_not) {
        std::cout << name << ": ";
        if (has)
            std::cout << num(val) << "\n";
        else
            std::cout << "undefined (" << why_not << ")\n";
    };
    opt_line("pearson_r", s.has_pearson_r, s.pearson_r,
             "needs at least 2 matrices and nonzero variance");
    opt_line("mean_ratio", s.has_mean_ratio, s.mean_ratio,
             "no matrix had a nonzero entropy measure");
    if (s.has_ci)
        std::cout << "ci (level " << num(args.cfg.bootstrap_level) << "): ["
                  << num(s.ci_lo) << ", " << num(s.ci_hi) << "]\n";
    else
        std::cout << "ci: undefined (too few distinct ratios)\n";
    opt_line("mean_ratio_unk", s.has_mean_ratio_unk, s.mean_ratio_unk,
             "no matrix had a nonzero entropy measure");
    opt_line("consistency", s.has_consistency, s.consistency,
             "no strictly ordered pairs");
    opt_line("discriminancy", s.has_discriminancy, s.discriminancy,
             "no pairs tied only under the entropy measure");
    std::cout << "zero_cen_count: " << s.zero_cen_count << "\n";
    if (!args.records_out.empty())
        std::cout << "records: " << args.records_out << "\n";
    if (!args.summary_out.empty())
        std::cout << "summary: " << args.summary_out << "\n";

    if (!s.sanity_band_evaluated) {
        std::cout << "sanity band: not evaluated (fewer than 10000 matrices)\n";
        return 0;
    }
    if (s.sanity_band_ok) {
        std::cout << "sanity band: ok (pearson_r >= 0.98, mean_ratio in "
                     "[0.99, 1.01])\n";
        return 0;
    }
    std::cout << "sanity band: FAILED\n";
    std::cerr << "check failed: expected pearson_r >= 0.98 and mean_ratio in "
                 "[0.99, 1.01], got pearson_r "
              << (s.has_pearson_r ? num(s.pearson_r) : std::string("undefined"))
              << " and mean_ratio "
              << (s.has_mean_ratio ? num(s.mean_ratio) : std::string("undefined"))
              << "\n";
    return 6;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "mcen: accuracy, correlation-coefficient, and entropy-based measures "
        "for multi-class confusion matrices"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--full-precision", g_full_precision,
                 "print 17 significant digits instead of 7");

    compute_args cargs;
    auto* compute = app.add_subcommand(
        "compute", "compute all measures for a confusion matrix CSV");
    compute->add_option("csv", cargs.csv_path, "square CSV of counts")
        ->required();
    compute->add_flag("--binary-closed-form", cargs.binary_closed_form,
                      "for 2x2 matrices, also evaluate the closed binary forms "
                      "and fail (exit 6) if they disagree");

    family_args fargs;
    auto* family = app.add_subcommand(
        "family", "evaluate an analytic matrix family against its closed forms");
    family->add_option("kind", fargs.kind,
                       "ZA | UNBALANCED | DIAG_B | UNIFORM")
        ->required();
    family->add_option("values", fargs.pos,
                       "positional parameters: ZA/UNBALANCED take N A, DIAG_B "
                       "takes N T F, UNIFORM takes N");
    family->add_option("--n", fargs.n, "number of classes (overrides positional)");
    family->add_option("--a", fargs.a, "raised entry (ZA / UNBALANCED)");
    family->add_option("--t", fargs.t, "diagonal entry (DIAG_B)");
    family->add_option("--f", fargs.f, "off-diagonal entry (DIAG_B)");

    enumerate_args eargs;
    auto* enumerate = app.add_subcommand(
        "enumerate-compare",
        "enumerate every matrix with fixed row sums and compare two measures");
    enumerate->add_option("--rows", eargs.rows, "row sums, e.g. 2,4,3")
        ->required()
        ->delimiter(',');
    enumerate->add_option("--pair", eargs.pair,
                          "measure pair f-g from {mcc, cen, acc}")
        ->capture_default_str();
    enumerate->add_option("--tie-tolerance", eargs.tie_tolerance,
                          "values closer than this count as tied")
        ->capture_default_str();
    enumerate->add_option("--pair-budget", eargs.pair_budget,
                          "refuse domains with more unordered pairs than this")
        ->capture_default_str();

    experiment_args xargs;
    mcen_experiment_config_default(&xargs.cfg);
    auto* experiment = app.add_subcommand(
        "experiment",
        "sample random confusion matrices and summarize how the transformed "
        "correlation measure tracks the scaled entropy measure");
    experiment->add_option("--n", xargs.cfg.n_matrices, "number of matrices")
        ->capture_default_str();
    experiment->add_option("--seed", xargs.cfg.seed, "RNG seed")
        ->capture_default_str();
    experiment->add_option("--dim-min", xargs.cfg.dim_min, "smallest dimension")
        ->capture_default_str();
    experiment->add_option("--dim-max", xargs.cfg.dim_max, "largest dimension")
        ->capture_default_str();
    experiment
        ->add_option("--diag-max", xargs.cfg.diag_max,
                     "diagonal entries are uniform in [1, diag-max]")
        ->capture_default_str();
    experiment
        ->add_option("--rho-min", xargs.cfg.rho_min,
                     "per-matrix off/diagonal ratio lower bound")
        ->capture_default_str();
    experiment
        ->add_option("--rho-max", xargs.cfg.rho_max,
                     "per-matrix off/diagonal ratio upper bound")
        ->capture_default_str();
    experiment
        ->add_option("--bootstrap-resamples", xargs.cfg.bootstrap_resamples,
                     "bootstrap resamples for the ratio CI")
        ->capture_default_str();
    experiment
        ->add_option("--bootstrap-level", xargs.cfg.bootstrap_level,
                     "bootstrap confidence level")
        ->capture_default_str();
    experiment
        ->add_option("--pair-sample", xargs.cfg.pair_sample,
                     "pairs sampled for consistency when the full count exceeds it")
        ->capture_default_str();
    experiment
        ->add_option("--jobs", xargs.cfg.jobs,
                     "worker threads (0 = all hardware threads); the output is "
                     "identical either way")
        ->capture_default_str();
    experiment
        ->add_option("--records-out", xargs.records_out,
                     "per-matrix CSV path (empty = skip)")
        ->capture_default_str();
    experiment
        ->add_option("--summary-out", xargs.summary_out,
                     "summary JSON path (empty = skip)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed())
            return run_compute(cargs);
        if (family->parsed())
            return run_family(fargs);
        if (enumerate->parsed())
            return run_enumerate(eargs);
        if (experiment->parsed())
            return run_experiment_cmd(xargs);
    } catch (const fatal& f) {
        return f.code;
    }
    return 0;
}
