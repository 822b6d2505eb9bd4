#include "matrix.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mcen {

confusion_matrix::confusion_matrix(int n, std::vector<long long> row_major)
    : n_(n), entries_(std::move(row_major)), rows_(n, 0), cols_(n, 0) {
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            const long long e = (*this)(i, j);
            rows_[static_cast<size_t>(i)] += e;
            cols_[static_cast<size_t>(j)] += e;
            total_ += e;
        }
        trace_ += (*this)(i, i);
    }
}

confusion_matrix confusion_matrix::from_entries(int n, std::vector<long long> row_major) {
    if (n < 2)
        throw validation_error("matrix must have at least 2 classes, got " + std::to_string(n));
    if (row_major.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
        throw validation_error("matrix must be square: expected " + std::to_string(n) + "x" +
                               std::to_string(n) + " = " + std::to_string(n * n) +
                               " entries, got " + std::to_string(row_major.size()));
    long long total = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const long long e = row_major[static_cast<size_t>(i) * n + j];
            if (e < 0)
                throw validation_error("matrix entries must be nonnegative: entry (" +
                                       std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                       ") is " + std::to_string(e));
            total += e;
        }
    }
    if (total == 0) throw validation_error("matrix total must be at least 1, got all zeros");
    return confusion_matrix(n, std::move(row_major));
}

confusion_matrix confusion_matrix::from_entries(const std::vector<std::vector<long long>>& rows) {
    const size_t n = rows.size();
    for (size_t i = 0; i < n; ++i)
        if (rows[i].size() != n)
            throw validation_error("matrix must be square: row " + std::to_string(i + 1) +
                                   " has " + std::to_string(rows[i].size()) +
                                   " entries, expected " + std::to_string(n));
    std::vector<long long> flat;
    flat.reserve(n * n);
    for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    return from_entries(static_cast<int>(n), std::move(flat));
}

confusion_matrix confusion_matrix::from_label_pairs(const std::vector<int>& true_labels,
                                                    const std::vector<int>& predicted_labels,
                                                    int n) {
    if (n < 2)
        throw validation_error("matrix must have at least 2 classes, got " + std::to_string(n));
    if (true_labels.size() != predicted_labels.size())
        throw validation_error("label sequences must have equal length: " +
                               std::to_string(true_labels.size()) + " vs " +
                               std::to_string(predicted_labels.size()));
    if (true_labels.empty()) throw validation_error("label sequences must be nonempty");
    std::vector<long long> flat(static_cast<size_t>(n) * n, 0);
    for (size_t s = 0; s < true_labels.size(); ++s) {
        const int t = true_labels[s], p = predicted_labels[s];
        if (t < 1 || t > n)
            throw validation_error("true label out of range at position " + std::to_string(s + 1) +
                                   ": " + std::to_string(t) + " not in [1," + std::to_string(n) +
                                   "]");
        if (p < 1 || p > n)
            throw validation_error("predicted label out of range at position " +
                                   std::to_string(s + 1) + ": " + std::to_string(p) + " not in [1," +
                                   std::to_string(n) + "]");
        ++flat[static_cast<size_t>(t - 1) * n + (p - 1)];
    }
    return confusion_matrix(n, std::move(flat));
}

long long confusion_matrix::at(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw validation_error("matrix index out of range: (" + std::to_string(i) + "," +
                               std::to_string(j) + ") for n=" + std::to_string(n_));
    return (*this)(i, j);
}

bool confusion_matrix::is_diagonal() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (i != j && (*this)(i, j) != 0) return false;
    return true;
}

confusion_matrix confusion_matrix::scaled(long long m) const {
    if (m < 1) throw validation_error("scale factor must be at least 1, got " + std::to_string(m));
    std::vector<long long> flat(entries_);
    for (long long& e : flat) {
        if (e != 0 && m > std::numeric_limits<long long>::max() / e)
            throw validation_error("scale factor " + std::to_string(m) + " overflows entry " +
                                   std::to_string(e));
        e *= m;
    }
    return confusion_matrix(n_, std::move(flat));
}

namespace {

long long parse_count(const std::string& token, size_t line_no) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    while (last != first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
    if (first == last)
        throw parse_error("line " + std::to_string(line_no) + ": empty field");
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range)
        throw parse_error("line " + std::to_string(line_no) + ": integer out of range: '" +
                          std::string(first, last) + "'");
    if (ec != std::errc() || ptr != last)
        throw parse_error("line " + std::to_string(line_no) + ": '" + std::string(first, last) +
                          "' is not a base-10 integer");
    return value;
}

}  // namespace

confusion_matrix confusion_matrix::read_csv(std::istream& in) {
    std::vector<std::vector<long long>> rows;
    std::string line;
    size_t line_no = 0;
    size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // A trailing newline on the last data row produces no extra line; a
        // genuinely blank line is only tolerated at end of input.
        std::string stripped = line;
        if (!stripped.empty() && stripped.back() == '\r') stripped.pop_back();
        if (stripped.find_first_not_of(" \t") == std::string::npos) {
            std::string rest;
            if (std::getline(in, rest))
                throw parse_error("line " + std::to_string(line_no) + ": blank line inside matrix");
            break;
        }
        std::vector<long long> row;
        std::stringstream fields(stripped);
        std::string token;
        while (std::getline(fields, token, ',')) row.push_back(parse_count(token, line_no));
        if (stripped.back() == ',')
            throw parse_error("line " + std::to_string(line_no) + ": empty field");
        if (width == 0) width = row.size();
        if (row.size() != width)
            throw parse_error("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(width) + " fields, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("empty input: expected at least 2 matrix rows");
    if (rows.size() != width)
        throw parse_error("expected " + std::to_string(width) + " lines of " +
                          std::to_string(width) + " fields, got " + std::to_string(rows.size()) +
                          " lines");
    return from_entries(rows);
}

confusion_matrix confusion_matrix::read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    try {
        return read_csv(in);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

void confusion_matrix::write_csv(std::ostream& out) const {
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (j) out << ',';
            out << (*this)(i, j);
        }
        out << '\n';
    }
}

void confusion_matrix::write_csv_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    write_csv(out);
    out.flush();
    if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace mcen
