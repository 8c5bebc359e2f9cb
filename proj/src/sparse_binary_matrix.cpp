#include "kronbeam/sparse_binary_matrix.hpp"

#include "kronbeam/error.hpp"

#include <algorithm>
#include <string>

namespace kronbeam {

SparseBinaryMatrix::SparseBinaryMatrix(std::size_t n_rows, std::size_t n_cols,
                                       const std::vector<std::vector<Index>>& row_support)
    : n_rows_(n_rows), n_cols_(n_cols) {
    if (row_support.size() != n_rows) {
        throw Error(ErrorKind::InvalidDims, "row_support has " + std::to_string(row_support.size()) +
                                                " rows, expected " + std::to_string(n_rows));
    }
    offsets_.assign(1, 0);
    offsets_.reserve(n_rows + 1);
    for (const auto& r : row_support) {
        indices_.insert(indices_.end(), r.begin(), r.end());
        offsets_.push_back(indices_.size());
    }
    validate();
}

SparseBinaryMatrix::SparseBinaryMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::size_t> offsets,
                                       std::vector<Index> indices)
    : n_rows_(n_rows), n_cols_(n_cols), offsets_(std::move(offsets)), indices_(std::move(indices)) {
    if (offsets_.size() != n_rows_ + 1 || offsets_.front() != 0 || offsets_.back() != indices_.size()) {
        throw Error(ErrorKind::InvalidDims, "inconsistent row offsets");
    }
    validate();
}

void SparseBinaryMatrix::validate() const {
    for (std::size_t i = 0; i < n_rows_; ++i) {
        if (offsets_[i + 1] < offsets_[i]) {
            throw Error(ErrorKind::InvalidDims, "row offsets must be non-decreasing");
        }
        auto r = row(i);
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k] >= n_cols_) {
                throw Error(ErrorKind::InvalidDims, "column index " + std::to_string(r[k]) + " out of range in row " +
                                                        std::to_string(i));
            }
            if (k > 0 && r[k] <= r[k - 1]) {
                throw Error(ErrorKind::InvalidDims, "column indices must be strictly increasing in row " +
                                                        std::to_string(i));
            }
        }
    }
}

bool SparseBinaryMatrix::at(std::size_t i, std::size_t j) const {
    auto r = row(i);
    return std::binary_search(r.begin(), r.end(), static_cast<Index>(j));
}

SparseBinaryMatrix SparseBinaryMatrix::transpose() const {
    std::vector<std::size_t> offsets(n_cols_ + 1, 0);
    for (Index c : indices_) {
        ++offsets[c + 1];
    }
    for (std::size_t j = 0; j < n_cols_; ++j) {
        offsets[j + 1] += offsets[j];
    }
    std::vector<Index> indices(indices_.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    // rows are visited in increasing order, so each column list comes out sorted
    for (std::size_t i = 0; i < n_rows_; ++i) {
        for (Index c : row(i)) {
            indices[cursor[c]++] = static_cast<Index>(i);
        }
    }
    return SparseBinaryMatrix(n_cols_, n_rows_, std::move(offsets), std::move(indices));
}

std::vector<std::size_t> SparseBinaryMatrix::row_weights() const {
    std::vector<std::size_t> out(n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i) {
        out[i] = row_weight(i);
    }
    return out;
}

std::vector<std::size_t> SparseBinaryMatrix::column_weights() const {
    std::vector<std::size_t> out(n_cols_, 0);
    for (Index c : indices_) {
        ++out[c];
    }
    return out;
}

std::vector<std::vector<SparseBinaryMatrix::Index>> SparseBinaryMatrix::row_support() const {
    std::vector<std::vector<Index>> out(n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i) {
        auto r = row(i);
        out[i].assign(r.begin(), r.end());
    }
    return out;
}

Eigen::MatrixXd SparseBinaryMatrix::to_dense() const {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_rows_), static_cast<Eigen::Index>(n_cols_));
    for (std::size_t i = 0; i < n_rows_; ++i) {
        for (Index c : row(i)) {
            dense(static_cast<Eigen::Index>(i), c) = 1.0;
        }
    }
    return dense;
}

}  // namespace kronbeam
