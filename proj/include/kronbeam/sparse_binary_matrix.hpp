#ifndef KRONBEAM_SPARSE_BINARY_MATRIX_HPP
#define KRONBEAM_SPARSE_BINARY_MATRIX_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace kronbeam {

/**
 * @brief 0/1 matrix in compressed sparse row form.
 *
 * Each row stores the strictly increasing column indices holding a one.
 * Instances are immutable once built; `transpose()` gives the column view
 * (the row supports of the transpose are the column supports of this matrix).
 */
class SparseBinaryMatrix {
public:
    using Index = std::uint32_t;

    SparseBinaryMatrix() = default;

    /**
     * @param n_rows Number of rows.
     * @param n_cols Number of columns.
     * @param row_support One entry per row, each a strictly increasing list of column indices.
     *
     * Throws `Error(InvalidDims)` if the support is malformed.
     */
    SparseBinaryMatrix(std::size_t n_rows, std::size_t n_cols, const std::vector<std::vector<Index>>& row_support);

    /// Compressed form: row i occupies indices[offsets[i], offsets[i+1]).
    SparseBinaryMatrix(std::size_t n_rows, std::size_t n_cols, std::vector<std::size_t> offsets, std::vector<Index> indices);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }
    std::size_t nnz() const { return indices_.size(); }

    std::span<const Index> row(std::size_t i) const {
        return {indices_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    std::size_t row_weight(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

    bool at(std::size_t i, std::size_t j) const;

    SparseBinaryMatrix transpose() const;

    std::vector<std::size_t> row_weights() const;
    std::vector<std::size_t> column_weights() const;

    std::vector<std::vector<Index>> row_support() const;

    Eigen::MatrixXd to_dense() const;

    friend bool operator==(const SparseBinaryMatrix&, const SparseBinaryMatrix&) = default;

private:
    void validate() const;

    std::size_t n_rows_ = 0;
    std::size_t n_cols_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Index> indices_;
};

}  // namespace kronbeam

#endif
