#ifndef KRONBEAM_RECOVERY_HPP
#define KRONBEAM_RECOVERY_HPP

#include "kronbeam/channel.hpp"
#include "kronbeam/codebooks.hpp"
#include "kronbeam/sparse_binary_matrix.hpp"

#include <complex>
#include <vector>

namespace kronbeam {

/**
 * How S_b is scaled into the recovery view S_C.
 *
 * `per_column` divides column j by sqrt(w_j), giving unit-norm columns for any
 * schedule. `uniform` divides every column by sqrt(nnz / n_cols), the mean
 * column weight, so random schedules keep their uneven column norms. The two
 * coincide for DeVore Kronecker matrices, where every column weighs p1 p2.
 */
enum class ColumnScaling { uniform, per_column };

/**
 * @brief Column-scaled recovery view S_C of a binary sensing matrix.
 *
 * The row scale 1/sqrt(z1 z2) of the measurement model is kept so that
 * solutions can be mapped back to the virtual-channel scale. Empty columns
 * (possible for random schedules) get scale 0 and are never selected.
 */
class SensingOperator {
public:
    SensingOperator(SparseBinaryMatrix s_b, double row_scale, ColumnScaling scaling = ColumnScaling::per_column);

    static SensingOperator from_schedule(const MeasurementSchedule& sched,
                                         ColumnScaling scaling = ColumnScaling::per_column);

    std::size_t n_rows() const { return rows_.n_rows(); }
    std::size_t n_cols() const { return rows_.n_cols(); }
    double row_scale() const { return row_scale_; }
    double col_scale(std::size_t j) const { return col_scale_[j]; }

    const SparseBinaryMatrix& rows() const { return rows_; }
    const SparseBinaryMatrix& columns() const { return columns_; }

    /// out = S_C^H r, one sparse sum per column.
    void correlate(const CVector& r, CVector& out) const;

    /// Dense copy of column j of S_C.
    CVector column(std::size_t j) const;

    Eigen::MatrixXd dense() const;

    /// Maps a coefficient of column j from the h_tilde scale back to h_v.
    std::complex<double> to_virtual_scale(std::size_t j, std::complex<double> coeff) const;

private:
    SparseBinaryMatrix rows_;
    SparseBinaryMatrix columns_;
    std::vector<double> col_scale_;
    double row_scale_;
};

struct RecoveryResult {
    std::vector<std::size_t> support;  ///< 1-based flat indices, selection order
    std::vector<std::complex<double>> coeffs;
    double residual_norm = 0.0;
    std::vector<double> residual_history;  ///< residual norm after each iteration
};

/**
 * Orthogonal matching pursuit on S_C. Each iteration picks the column with
 * the largest |correlation| (lowest index on ties), re-solves least squares
 * on the selected set through an incremental QR, and stops after `sparsity`
 * atoms or once the residual norm drops below 1e-12. Coefficients are in the
 * column-normalized (h_tilde) scale.
 *
 * Throws `DimensionMismatch` if y has the wrong length, `InvalidParams` for
 * sparsity 0, and `RankDeficient` if a selected column is numerically
 * dependent on the ones already chosen.
 */
RecoveryResult omp(const SensingOperator& op, const CVector& y, std::size_t sparsity);

/// Coefficients of `res` mapped to the virtual-channel scale.
std::vector<std::complex<double>> rescale_to_virtual(const SensingOperator& op, const RecoveryResult& res);

/// Support entry with the largest |coefficient|, lowest index on ties. Throws `EmptySupport`.
std::size_t strongest_index(const RecoveryResult& res);

/// Same rule applied to explicit (support, coefficient) lists.
std::size_t strongest_index(const std::vector<std::size_t>& support, const std::vector<std::complex<double>>& coeffs);

}  // namespace kronbeam

#endif
