#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mcen {

// Square matrix of nonnegative integer counts where entry (i,j) is the number
// of samples of true class i predicted as class j. Indices are 0-based here;
// user-facing layers (CLI, error messages) use 1-based class labels.
// Immutable after construction; marginals are precomputed.
class confusion_matrix {
public:
    static confusion_matrix from_entries(const std::vector<std::vector<long long>>& rows);
    static confusion_matrix from_entries(int n, std::vector<long long> row_major);
    // Labels are 1-based, in [1, n].
    static confusion_matrix from_label_pairs(const std::vector<int>& true_labels,
                                             const std::vector<int>& predicted_labels, int n);
    // Exactly n lines of n comma-separated nonnegative base-10 integers.
    static confusion_matrix read_csv(std::istream& in);
    static confusion_matrix read_csv_file(const std::string& path);

    void write_csv(std::ostream& out) const;
    void write_csv_file(const std::string& path) const;

    // Every entry multiplied by m >= 1.
    confusion_matrix scaled(long long m) const;

    int n() const { return n_; }
    long long at(int i, int j) const;  // bounds-checked
    long long operator()(int i, int j) const { return entries_[static_cast<size_t>(i) * n_ + j]; }
    long long row_sum(int i) const { return rows_[static_cast<size_t>(i)]; }
    long long col_sum(int j) const { return cols_[static_cast<size_t>(j)]; }
    const std::vector<long long>& row_sums() const { return rows_; }
    const std::vector<long long>& col_sums() const { return cols_; }
    long long trace() const { return trace_; }
    long long total() const { return total_; }
    bool is_diagonal() const;

    bool operator==(const confusion_matrix& other) const {
        return n_ == other.n_ && entries_ == other.entries_;
    }

private:
    confusion_matrix(int n, std::vector<long long> row_major);

    int n_;
    std::vector<long long> entries_;  // row-major
    std::vector<long long> rows_, cols_;
    long long trace_ = 0;
    long long total_ = 0;
};

}  // namespace mcen
