#include "kronbeam/recovery.hpp"

#include "kronbeam/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kronbeam {

namespace {

constexpr double kResidualTol = 1e-12;
constexpr double kDependenceTol = 1e-10;

}  // namespace

SensingOperator::SensingOperator(SparseBinaryMatrix s_b, double row_scale, ColumnScaling scaling)
    : rows_(std::move(s_b)), columns_(rows_.transpose()), row_scale_(row_scale) {
    if (rows_.nnz() == 0) {
        throw Error(ErrorKind::InvalidWeight, "sensing matrix has no ones");
    }
    const double uniform =
        1.0 / std::sqrt(static_cast<double>(rows_.nnz()) / static_cast<double>(rows_.n_cols()));
    col_scale_.resize(rows_.n_cols());
    for (std::size_t j = 0; j < col_scale_.size(); ++j) {
        const std::size_t w = columns_.row_weight(j);
        if (w == 0) {
            col_scale_[j] = 0.0;
        } else {
            col_scale_[j] = scaling == ColumnScaling::uniform ? uniform : 1.0 / std::sqrt(static_cast<double>(w));
        }
    }
}

SensingOperator SensingOperator::from_schedule(const MeasurementSchedule& sched, ColumnScaling scaling) {
    const double zz = static_cast<double>(sched.scaling.z1 * sched.scaling.z2);
    if (!(zz > 0.0)) {
        throw Error(ErrorKind::InvalidWeight, "schedule has zero row weight");
    }
    return SensingOperator(sched.stacked(), 1.0 / std::sqrt(zz), scaling);
}

void SensingOperator::correlate(const CVector& r, CVector& out) const {
    out.resize(static_cast<Eigen::Index>(n_cols()));
    for (std::size_t j = 0; j < n_cols(); ++j) {
        std::complex<double> sum{0.0, 0.0};
        for (auto t : columns_.row(j)) {
            sum += r(t);
        }
        out(static_cast<Eigen::Index>(j)) = col_scale_[j] * sum;
    }
}

CVector SensingOperator::column(std::size_t j) const {
    CVector out = CVector::Zero(static_cast<Eigen::Index>(n_rows()));
    for (auto t : columns_.row(j)) {
        out(t) = col_scale_[j];
    }
    return out;
}

Eigen::MatrixXd SensingOperator::dense() const {
    Eigen::MatrixXd out = rows_.to_dense();
    for (std::size_t j = 0; j < n_cols(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) *= col_scale_[j];
    }
    return out;
}

std::complex<double> SensingOperator::to_virtual_scale(std::size_t j, std::complex<double> coeff) const {
    // h_tilde_j = h_j * sqrt(w_j) * row_scale
    if (col_scale_[j] == 0.0) {
        return {0.0, 0.0};
    }
    return coeff * col_scale_[j] / row_scale_;
}

RecoveryResult omp(const SensingOperator& op, const CVector& y, std::size_t sparsity) {
    if (sparsity < 1) {
        throw Error(ErrorKind::InvalidParams, "sparsity must be >= 1");
    }
    if (static_cast<std::size_t>(y.size()) != op.n_rows()) {
        throw Error(ErrorKind::DimensionMismatch, "measurement length " + std::to_string(y.size()) + " != " +
                                                      std::to_string(op.n_rows()) + " rows");
    }

    RecoveryResult res;
    const double y_norm = y.norm();
    res.residual_norm = y_norm;
    if (y_norm < kResidualTol) {
        res.residual_norm = 0.0;
        return res;
    }

    const std::size_t max_atoms = std::min({sparsity, op.n_cols(), op.n_rows()});
    std::vector<CVector> basis;        // orthonormal columns Q
    Eigen::MatrixXcd r_factor = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(max_atoms),
                                                       static_cast<Eigen::Index>(max_atoms));
    CVector qty(static_cast<Eigen::Index>(max_atoms));  // Q^H y
    std::vector<bool> chosen(op.n_cols(), false);
    CVector residual = y;
    CVector corr;

    while (res.support.size() < max_atoms) {
        op.correlate(residual, corr);
        std::size_t best = op.n_cols();
        double best_mag = 0.0;
        for (std::size_t j = 0; j < op.n_cols(); ++j) {
            if (chosen[j]) {
                continue;
            }
            const double mag = std::abs(corr(static_cast<Eigen::Index>(j)));
            if (mag > best_mag) {
                best_mag = mag;
                best = j;
            }
        }
        // residual already orthogonal to every remaining column
        if (best == op.n_cols() || best_mag <= kResidualTol * y_norm) {
            break;
        }

        const auto n = static_cast<Eigen::Index>(basis.size());
        CVector a = op.column(best);
        const double column_norm = a.norm();
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const std::complex<double> proj = basis[static_cast<std::size_t>(i)].dot(a);
                r_factor(i, n) += proj;
                a -= proj * basis[static_cast<std::size_t>(i)];
            }
        }
        const double diag = a.norm();
        if (diag < kDependenceTol * column_norm) {
            throw Error(ErrorKind::RankDeficient, "column " + std::to_string(best + 1) +
                                                      " is numerically dependent on the selected set");
        }
        r_factor(n, n) = diag;
        basis.push_back(a / diag);
        qty(n) = basis.back().dot(y);
        residual -= basis.back().dot(residual) * basis.back();

        chosen[best] = true;
        res.support.push_back(best + 1);
        res.residual_norm = residual.norm();
        res.residual_history.push_back(res.residual_norm);
        if (res.residual_norm < kResidualTol) {
            break;
        }
    }

    const auto m = static_cast<Eigen::Index>(res.support.size());
    res.coeffs.resize(res.support.size());
    if (m > 0) {
        const CVector x = r_factor.topLeftCorner(m, m).triangularView<Eigen::Upper>().solve(qty.head(m));
        for (Eigen::Index i = 0; i < m; ++i) {
            res.coeffs[static_cast<std::size_t>(i)] = x(i);
        }
    }
    return res;
}

std::vector<std::complex<double>> rescale_to_virtual(const SensingOperator& op, const RecoveryResult& res) {
    std::vector<std::complex<double>> out(res.coeffs.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = op.to_virtual_scale(res.support[i] - 1, res.coeffs[i]);
    }
    return out;
}

std::size_t strongest_index(const std::vector<std::size_t>& support, const std::vector<std::complex<double>>& coeffs) {
    if (support.empty() || support.size() != coeffs.size()) {
        throw Error(ErrorKind::EmptySupport, "no recovered support to pick from");
    }
    std::size_t best = support[0];
    double best_mag = std::abs(coeffs[0]);
    for (std::size_t i = 1; i < support.size(); ++i) {
        const double mag = std::abs(coeffs[i]);
        if (mag > best_mag || (mag == best_mag && support[i] < best)) {
            best_mag = mag;
            best = support[i];
        }
    }
    return best;
}

std::size_t strongest_index(const RecoveryResult& res) { return strongest_index(res.support, res.coeffs); }

}  // namespace kronbeam
