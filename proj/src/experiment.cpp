#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "comparison.hpp"
#include "errors.hpp"
#include "metrics.hpp"
#include "rng.hpp"

namespace mcen {

namespace {

constexpr size_t k_reservoir_cap = 1u << 21;  // 2,097,152 > default 200,000
constexpr long long k_sanity_band_min_n = 10000;
constexpr double k_pair_tie_tolerance = 1e-12;

void append_full(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

void experiment_config::validate() const {
    if (n_matrices < 1)
        throw validation_error("n_matrices must be at least 1, got " + std::to_string(n_matrices));
    if (dim_min < 3)
        throw validation_error("dim_min must be at least 3, got " + std::to_string(dim_min));
    if (dim_max < dim_min)
        throw validation_error("dim_max must be at least dim_min, got dim_max=" +
                               std::to_string(dim_max) + " dim_min=" + std::to_string(dim_min));
    if (diag_max < 1)
        throw validation_error("diag_max must be at least 1, got " + std::to_string(diag_max));
    if (!(rho_min > 0.0) || !(rho_min <= rho_max) || !(rho_max <= 1.0))
        throw validation_error("need 0 < rho_min <= rho_max <= 1");
    if (static_cast<double>(diag_max) * rho_min < 1.0)
        throw validation_error("diag_max * rho_min must be at least 1 so off-diagonal "
                               "entries have a nonempty range");
    if (bootstrap_resamples < 100)
        throw validation_error("bootstrap_resamples must be at least 100, got " +
                               std::to_string(bootstrap_resamples));
    if (!(bootstrap_level > 0.0 && bootstrap_level < 1.0))
        throw validation_error("bootstrap_level must be inside (0, 1)");
    if (pair_sample < 1)
        throw validation_error("pair_sample must be at least 1");
    if (jobs < 0)
        throw validation_error("jobs must be nonnegative, got " + std::to_string(jobs));
}

confusion_matrix generate_matrix(std::mt19937_64& g, int n, const experiment_config& cfg) {
    const double rho = rng::uniform_real(g, cfg.rho_min, cfg.rho_max);
    const long long off_max =
        std::max<long long>(1, static_cast<long long>(cfg.diag_max * rho));
    std::vector<long long> entries(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            entries[static_cast<size_t>(i) * n + j] =
                (i == j) ? rng::uniform_int(g, 1, cfg.diag_max) : rng::uniform_int(g, 1, off_max);
    return confusion_matrix::from_entries(n, std::move(entries));
}

summarizer::summarizer(const experiment_config& cfg) : cfg_(cfg), reservoir_cap_(k_reservoir_cap) {
    cfg_.validate();
    const size_t reserve = static_cast<size_t>(
        std::min<long long>(cfg_.n_matrices, static_cast<long long>(reservoir_cap_)));
    res_ratio_.reserve(reserve);
    res_tmcc_.reserve(reserve);
    res_kcen_.reserve(reserve);
}

void summarizer::add(const experiment_record& rec) {
    ++count_;
    // bivariate Welford over the scatter coordinates
    const double dx = rec.tmcc - mean_x_;
    const double dy = rec.k_cen - mean_y_;
    mean_x_ += dx / static_cast<double>(count_);
    mean_y_ += dy / static_cast<double>(count_);
    const double dy2 = rec.k_cen - mean_y_;
    m2x_ += dx * (rec.tmcc - mean_x_);
    m2y_ += dy * dy2;
    cxy_ += dx * dy2;

    if (std::isnan(rec.ratio)) {
        ++zero_cen_;
        return;
    }
    ++ratio_count_;
    auto neumaier = [](double& sum, double& comp, double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    };
    neumaier(ratio_sum_, ratio_comp_, rec.ratio);
    neumaier(unk_sum_, unk_comp_, rec.tmcc / rec.cen);

    // algorithm-R reservoir, replacement indices from a dedicated stream so
    // the sample only depends on (seed, order of finite-ratio records)
    if (res_ratio_.size() < reservoir_cap_) {
        res_ratio_.push_back(rec.ratio);
        res_tmcc_.push_back(rec.tmcc);
        res_kcen_.push_back(rec.k_cen);
    } else {
        auto g = rng::make_stream(cfg_.seed, rng::domain::reservoir,
                             static_cast<uint64_t>(reservoir_seen_));
        const long long pos = rng::uniform_int(g, 0, reservoir_seen_);
        if (pos < static_cast<long long>(reservoir_cap_)) {
            const size_t p = static_cast<size_t>(pos);
            res_ratio_[p] = rec.ratio;
            res_tmcc_[p] = rec.tmcc;
            res_kcen_[p] = rec.k_cen;
        }
    }
    ++reservoir_seen_;
}

experiment_summary summarizer::finish() {
    experiment_summary s;
    s.n_matrices = count_;
    s.seed = cfg_.seed;
    s.zero_cen_count = zero_cen_;

    if (count_ >= 2 && m2x_ > 0.0 && m2y_ > 0.0)
        s.pearson_r = cxy_ / std::sqrt(m2x_ * m2y_);

    if (ratio_count_ > 0) {
        s.mean_ratio = (ratio_sum_ + ratio_comp_) / static_cast<double>(ratio_count_);
        s.mean_ratio_unk = (unk_sum_ + unk_comp_) / static_cast<double>(ratio_count_);
    }

    // consistency / discriminancy over (tmcc, k_cen) pairs from the reservoir
    const unsigned long long m = res_tmcc_.size();
    if (m >= 2) {
        const unsigned long long total_pairs = m * (m - 1) / 2;
        unsigned long long p = 0, q = 0, r = 0, sd = 0;
        auto classify = [&](size_t i, size_t j) {
            const double df = res_tmcc_[i] - res_tmcc_[j];
            const double dg = res_kcen_[i] - res_kcen_[j];
            const int sf = (std::abs(df) <= k_pair_tie_tolerance) ? 0 : (df > 0 ? 1 : -1);
            const int sg = (std::abs(dg) <= k_pair_tie_tolerance) ? 0 : (dg > 0 ? 1 : -1);
            if (sf != 0 && sg != 0) {
                if (sf == sg)
                    ++r;
                else
                    ++sd;
            } else if (sf != 0) {
                ++p;
            } else if (sg != 0) {
                ++q;
            }
        };
        if (total_pairs <= cfg_.pair_sample) {
            for (size_t i = 0; i + 1 < m; ++i)
                for (size_t j = i + 1; j < m; ++j)
                    classify(i, j);
        } else {
            auto g = rng::make_stream(cfg_.seed, rng::domain::pair_sampling, 0);
            for (unsigned long long d = 0; d < cfg_.pair_sample; ++d) {
                const auto i = static_cast<size_t>(
                    rng::uniform_int(g, 0, static_cast<long long>(m) - 1));
                const auto j = static_cast<size_t>(
                    rng::uniform_int(g, 0, static_cast<long long>(m) - 1));
                if (i == j)
                    continue;
                classify(i, j);
            }
        }
        if (r + sd > 0)
            s.consistency = static_cast<double>(r) / static_cast<double>(r + sd);
        if (q > 0)
            s.discriminancy = static_cast<double>(p) / static_cast<double>(q);
    }

    if (res_ratio_.size() >= 2) {
        try {
            const auto ci = bootstrap_mean_ci(res_ratio_, cfg_.bootstrap_resamples,
                                              cfg_.bootstrap_level, cfg_.seed);
            s.ci_lo = ci.lo;
            s.ci_hi = ci.hi;
        } catch (const validation_error&) {
            // all ratios identical: interval degenerate, leave undefined
        }
    }

    s.sanity_band_evaluated = count_ >= k_sanity_band_min_n;
    if (s.sanity_band_evaluated) {
        const bool r_ok = s.pearson_r && *s.pearson_r >= 0.98;
        const bool ratio_ok = s.mean_ratio && *s.mean_ratio >= 0.99 && *s.mean_ratio <= 1.01;
        s.sanity_band_ok = r_ok && ratio_ok;
    }
    return s;
}

namespace {

experiment_record make_record(long long index, const confusion_matrix& cm) {
    const metric_report rep = compute_report(cm);
    experiment_record rec;
    rec.index = index;
    rec.n = rep.n;
    rec.acc = rep.acc;
    rec.mcc = rep.mcc;
    rec.cen = rep.cen;
    rec.k_cen = rep.k_cen;
    rec.tmcc = rep.tmcc;
    rec.ratio = (rep.cen == 0.0) ? std::numeric_limits<double>::quiet_NaN()
                                 : rep.tmcc / rep.k_cen;
    return rec;
}

void append_record_line(std::string& out, const experiment_record& rec) {
    out += std::to_string(rec.index);
    out += ',';
    out += std::to_string(rec.n);
    for (double v : {rec.acc, rec.mcc, rec.cen, rec.k_cen, rec.tmcc, rec.ratio}) {
        out += ',';
        append_full(out, v);
    }
    out += '\n';
}

struct chunk_result {
    long long first_index = 0;
    std::vector<experiment_record> records;
};

}  // namespace

experiment_summary run_experiment(const experiment_config& cfg,
                                  const std::string& records_csv_path,
                                  const std::string& summary_json_path) {
    cfg.validate();

    std::ofstream records_out;
    if (!records_csv_path.empty()) {
        records_out.open(records_csv_path, std::ios::binary);
        if (!records_out)
            throw io_error("cannot open '" + records_csv_path + "' for writing");
        records_out << records_csv_header << '\n';
    }

    summarizer agg(cfg);

    const long long total = cfg.n_matrices;
    constexpr long long chunk_size = 2048;
    const long long n_chunks = (total + chunk_size - 1) / chunk_size;
    unsigned int jobs = cfg.jobs > 0 ? static_cast<unsigned int>(cfg.jobs)
                                     : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned int>(
        std::min<long long>(jobs, std::max<long long>(1, n_chunks)));

    auto compute_one = [&cfg](long long index) {
        auto g = rng::make_stream(cfg.seed, rng::domain::generation,
                             static_cast<uint64_t>(index));
        const int n = static_cast<int>(rng::uniform_int(g, cfg.dim_min, cfg.dim_max));
        return make_record(index, generate_matrix(g, n, cfg));
    };

    auto consume = [&](const experiment_record& rec, std::string& line_buf) {
        if (records_out.is_open()) {
            line_buf.clear();
            append_record_line(line_buf, rec);
            records_out.write(line_buf.data(),
                              static_cast<std::streamsize>(line_buf.size()));
        }
        agg.add(rec);
    };

    if (jobs <= 1) {
        std::string line_buf;
        for (long long i = 0; i < total; ++i)
            consume(compute_one(i), line_buf);
    } else {
        // Workers fill chunks; the main thread consumes them strictly in chunk
        // order so records land in index order no matter the thread count.
        std::mutex mu;
        std::condition_variable cv_done, cv_space;
        std::vector<std::optional<chunk_result>> done(static_cast<size_t>(n_chunks));
        std::atomic<long long> next_chunk{0};
        long long consumed = 0;  // guarded by mu
        const long long window = static_cast<long long>(jobs) * 4;

        auto worker = [&] {
            for (;;) {
                const long long c = next_chunk.fetch_add(1);
                if (c >= n_chunks)
                    return;
                {
                    std::unique_lock<std::mutex> lk(mu);
                    cv_space.wait(lk, [&] { return c < consumed + window; });
                }
                chunk_result res;
                res.first_index = c * chunk_size;
                const long long end = std::min(total, res.first_index + chunk_size);
                res.records.reserve(static_cast<size_t>(end - res.first_index));
                for (long long i = res.first_index; i < end; ++i)
                    res.records.push_back(compute_one(i));
                {
                    std::lock_guard<std::mutex> lk(mu);
                    done[static_cast<size_t>(c)] = std::move(res);
                }
                cv_done.notify_all();
            }
        };

        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned int t = 0; t < jobs; ++t)
            pool.emplace_back(worker);

        std::string line_buf;
        for (long long c = 0; c < n_chunks; ++c) {
            chunk_result res;
            {
                std::unique_lock<std::mutex> lk(mu);
                cv_done.wait(lk, [&] { return done[static_cast<size_t>(c)].has_value(); });
                res = std::move(*done[static_cast<size_t>(c)]);
                done[static_cast<size_t>(c)].reset();
                ++consumed;
            }
            cv_space.notify_all();
            for (const auto& rec : res.records)
                consume(rec, line_buf);
        }
        for (auto& t : pool)
            t.join();
    }

    if (records_out.is_open()) {
        records_out.flush();
        if (!records_out)
            throw io_error("failed writing '" + records_csv_path + "'");
        records_out.close();
    }

    experiment_summary summary = agg.finish();

    if (!summary_json_path.empty()) {
        std::ofstream out(summary_json_path, std::ios::binary);
        if (!out)
            throw io_error("cannot open '" + summary_json_path + "' for writing");
        write_summary_json(summary, cfg, out);
        out.flush();
        if (!out)
            throw io_error("failed writing '" + summary_json_path + "'");
    }
    return summary;
}

std::vector<experiment_record> read_records_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line))
        throw parse_error(path + ": empty records file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != records_csv_header)
        throw parse_error(path + ": line 1: expected header '" +
                          std::string(records_csv_header) + "', got '" + line + "'");
    std::vector<experiment_record> records;
    long long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (fields.size() != 8)
            throw parse_error(path + ": line " + std::to_string(line_no) +
                              ": expected 8 fields, got " + std::to_string(fields.size()));
        experiment_record rec;
        try {
            size_t pos = 0;
            rec.index = std::stoll(fields[0], &pos);
            rec.n = std::stoi(fields[1], &pos);
            rec.acc = std::stod(fields[2], &pos);
            rec.mcc = std::stod(fields[3], &pos);
            rec.cen = std::stod(fields[4], &pos);
            rec.k_cen = std::stod(fields[5], &pos);
            rec.tmcc = std::stod(fields[6], &pos);
            rec.ratio = std::stod(fields[7], &pos);
        } catch (const std::exception&) {
            throw parse_error(path + ": line " + std::to_string(line_no) +
                              ": malformed numeric field");
        }
        records.push_back(rec);
    }
    return records;
}

void write_summary_json(const experiment_summary& s, const experiment_config& cfg,
                        std::ostream& out) {
    nlohmann::ordered_json j;
    auto put_opt = [&j](const char* key, const std::optional<double>& v) {
        if (v)
            j[key] = *v;
        else
            j[key] = nullptr;
    };
    put_opt("pearson_r", s.pearson_r);
    put_opt("consistency", s.consistency);
    put_opt("discriminancy", s.discriminancy);
    put_opt("mean_ratio", s.mean_ratio);
    put_opt("ci_lo", s.ci_lo);
    put_opt("ci_hi", s.ci_hi);
    put_opt("mean_ratio_unk", s.mean_ratio_unk);
    j["zero_cen_count"] = s.zero_cen_count;
    j["n_matrices"] = s.n_matrices;
    j["seed"] = s.seed;
    j["rng"] = rng::identifier;
    j["sanity_band_evaluated"] = s.sanity_band_evaluated;
    j["sanity_band_ok"] = s.sanity_band_ok;
    j["config"] = nlohmann::ordered_json{{"n_matrices", cfg.n_matrices},
                                         {"dim_min", cfg.dim_min},
                                         {"dim_max", cfg.dim_max},
                                         {"diag_max", cfg.diag_max},
                                         {"rho_min", cfg.rho_min},
                                         {"rho_max", cfg.rho_max},
                                         {"seed", cfg.seed},
                                         {"bootstrap_resamples", cfg.bootstrap_resamples},
                                         {"bootstrap_level", cfg.bootstrap_level},
                                         {"pair_sample", cfg.pair_sample}};
    out << j.dump(2) << '\n';
}

}  // namespace mcen
