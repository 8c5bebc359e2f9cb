#include "kronbeam/error.hpp"
#include "kronbeam/recovery.hpp"
#include "kronbeam/sensing.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace kronbeam;
using cd = std::complex<double>;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& err) {
        return err.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

SensingOperator kron_operator(DeVoreParams tx, DeVoreParams rx) {
    const auto ks = KroneckerSensing::build(tx, rx);
    return SensingOperator(ks.s_b, ks.views.row_scale);
}

SensingOperator single_operator(DeVoreParams params) {
    const auto m = devore_matrix(params);
    return SensingOperator(m, 1.0 / std::sqrt(static_cast<double>(m.row_weight(0))));
}

CVector random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    CVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = cd(normal(rng), normal(rng));
    }
    return v;
}

}  // namespace

TEST_CASE("column view has unit norm columns for DeVore Kronecker matrices") {
    const auto op = kron_operator({3, 2}, {3, 2});
    CHECK(op.row_scale() == doctest::Approx(1.0 / 9.0));
    const Eigen::MatrixXd dense = op.dense();
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
        CHECK(std::abs(dense.col(j).norm() - 1.0) < 1e-12);
        CHECK(op.col_scale(static_cast<std::size_t>(j)) == doctest::Approx(1.0 / 3.0));
    }
    CHECK((op.column(17) - dense.col(17).cast<cd>()).norm() < 1e-15);
}

TEST_CASE("sparse correlations equal dense products") {
    std::mt19937_64 rng(4);
    for (auto scaling : {ColumnScaling::uniform, ColumnScaling::per_column}) {
        Rng srng(6);
        const auto sched = rdperm_schedule(9, 8, 3, 2, 20, srng);
        const auto rnd = SensingOperator::from_schedule(sched, scaling);
        for (const SensingOperator* op : {&rnd}) {
            const Eigen::MatrixXcd dense = op->dense().cast<cd>();
            for (int trial = 0; trial < 20; ++trial) {
                const CVector r = random_vector(op->n_rows(), rng);
                CVector out;
                op->correlate(r, out);
                CHECK((out - dense.adjoint() * r).norm() <= 1e-12 * std::max(1.0, out.norm()));
            }
        }
    }
    const auto op = kron_operator({3, 1}, {2, 1});
    const Eigen::MatrixXcd dense = op.dense().cast<cd>();
    for (int trial = 0; trial < 20; ++trial) {
        const CVector r = random_vector(op.n_rows(), rng);
        CVector out;
        op.correlate(r, out);
        CHECK((out - dense.adjoint() * r).norm() <= 1e-12 * out.norm());
    }
}

TEST_CASE("per-column scaling normalizes each random column") {
    Rng srng(12);
    const auto sched = rdperm_schedule(9, 9, 3, 3, 9, srng);
    const auto op = SensingOperator::from_schedule(sched, ColumnScaling::per_column);
    const Eigen::MatrixXd dense = op.dense();
    for (Eigen::Index j = 0; j < dense.cols(); ++j) {
        const double norm = dense.col(j).norm();
        CHECK((norm == 0.0 || std::abs(norm - 1.0) < 1e-12));
    }
    const auto uniform = SensingOperator::from_schedule(sched, ColumnScaling::uniform);
    const double expected = 1.0 / std::sqrt(static_cast<double>(uniform.rows().nnz()) / 81.0);
    for (std::size_t j = 0; j < 81; ++j) {
        if (uniform.columns().row_weight(j) > 0) {
            CHECK(uniform.col_scale(j) == doctest::Approx(expected));
        } else {
            CHECK(uniform.col_scale(j) == 0.0);
        }
    }
}

TEST_CASE("zero measurement gives an empty result") {
    const auto op = kron_operator({3, 2}, {3, 2});
    const auto res = omp(op, CVector::Zero(81), 1);
    CHECK(res.support.empty());
    CHECK(res.coeffs.empty());
    CHECK(res.residual_norm == 0.0);
}

TEST_CASE("noiseless 1-sparse example") {
    const auto op = kron_operator({3, 2}, {3, 2});
    const CVector y = 5.0 * op.column(99);
    const auto res = omp(op, y, 1);
    REQUIRE(res.support.size() == 1);
    CHECK(res.support[0] == 100);
    CHECK(std::abs(res.coeffs[0] - cd(5.0, 0.0)) < 1e-12);
    CHECK(res.residual_norm < 1e-12);
    const auto virt = rescale_to_virtual(op, res);
    CHECK(std::abs(virt[0] - cd(15.0, 0.0)) < 1e-12);  // sqrt(z1 z2 / (p1 p2)) = 3
    CHECK(std::abs(op.to_virtual_scale(99, cd(1.0, 0.0)) - cd(3.0, 0.0)) < 1e-15);
}

TEST_CASE("every 1-sparse vector is recovered at (3,2) x (3,2)") {
    const auto op = kron_operator({3, 2}, {3, 2});
    const cd c(0.7, -1.3);
    for (std::size_t eps = 1; eps <= 729; ++eps) {
        const auto res = omp(op, c * op.column(eps - 1), 1);
        REQUIRE(res.support.size() == 1);
        CHECK(res.support[0] == eps);
        CHECK(std::abs(res.coeffs[0] - c) < 1e-12);
    }
}

TEST_CASE("every 2-sparse vector is recovered on DeVore(3,1)") {
    const auto op = single_operator({3, 1});
    int supports = 0;
    for (std::size_t a = 0; a < 9; ++a) {
        for (std::size_t b = a + 1; b < 9; ++b) {
            for (auto [ca, cb] : {std::pair{1.0, 0.5}, {0.5, 1.0}}) {
                const CVector y = ca * op.column(a) + cb * op.column(b);
                const auto res = omp(op, y, 2);
                REQUIRE(res.support.size() == 2);
                std::vector<std::size_t> got = res.support;
                std::sort(got.begin(), got.end());
                CHECK(got == std::vector<std::size_t>{a + 1, b + 1});
                CHECK(res.residual_norm < 1e-12);
                for (std::size_t i = 0; i < 2; ++i) {
                    const double expected = res.support[i] == a + 1 ? ca : cb;
                    CHECK(std::abs(res.coeffs[i] - cd(expected, 0.0)) < 1e-12);
                }
            }
            ++supports;
        }
    }
    CHECK(supports == 36);
}

TEST_CASE("residual is orthogonal to the selected columns and non-increasing") {
    const auto op = kron_operator({3, 2}, {3, 2});
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const CVector y = random_vector(81, rng);
        for (std::size_t k = 1; k <= 6; ++k) {
            const auto res = omp(op, y, k);
            CHECK(res.support.size() == k);
            CHECK(res.residual_history.size() == k);
            CVector fit = CVector::Zero(81);
            for (std::size_t i = 0; i < k; ++i) {
                fit += res.coeffs[i] * op.column(res.support[i] - 1);
            }
            const CVector residual = y - fit;
            CHECK(std::abs(residual.norm() - res.residual_norm) < 1e-10);
            for (auto eps : res.support) {
                CHECK(std::abs(op.column(eps - 1).dot(residual)) < 1e-10);
            }
            for (std::size_t i = 1; i < k; ++i) {
                CHECK(res.residual_history[i] <= res.residual_history[i - 1] + 1e-12);
            }
            CHECK(std::set<std::size_t>(res.support.begin(), res.support.end()).size() == k);
        }
    }
}

TEST_CASE("atom selection breaks ties toward the lowest index") {
    const auto op = single_operator({2, 1});
    // columns 0 and 1 share no rows, equal correlation
    const CVector y = op.column(0) + op.column(1);
    const auto res = omp(op, y, 1);
    CHECK(res.support == std::vector<std::size_t>{1});
}

TEST_CASE("omp argument errors") {
    const auto op = kron_operator({3, 2}, {3, 2});
    CHECK(kind_of([&] { omp(op, CVector::Ones(80), 1); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { omp(op, CVector::Ones(81), 0); }) == ErrorKind::InvalidParams);
}

TEST_CASE("columns in the span of the selection are never picked") {
    // columns 0 and 1 are identical
    const SparseBinaryMatrix m(3, 3, std::vector<std::vector<SparseBinaryMatrix::Index>>{{0, 1}, {0, 1, 2}, {2}});
    const SensingOperator op(m, 1.0);
    CVector y(3);
    y << cd(1.0, 0.0), cd(1.0, 0.0), cd(0.0, 0.0);
    // after picking column 0 the residual is zero, so OMP stops cleanly
    CHECK(omp(op, y, 3).support.size() == 1);
    CVector y2(3);
    y2 << cd(1.0, 0.0), cd(2.5, 0.0), cd(1.5, 0.0);
    const auto res = omp(op, y2, 3);
    CHECK(res.support.size() == 2);
    CHECK(std::find(res.support.begin(), res.support.end(), 3) != res.support.end());
    CHECK(res.residual_norm < 1e-12);
}

TEST_CASE("strongest index") {
    RecoveryResult single;
    single.support = {42};
    single.coeffs = {cd(0.1, 0.0)};
    CHECK(strongest_index(single) == 42);
    CHECK(strongest_index({7, 3}, {cd(2.0, 0.0), cd(0.0, 1.0)}) == 7);
    CHECK(strongest_index({7, 3}, {cd(1.0, 0.0), cd(0.0, 1.0)}) == 3);
    CHECK(strongest_index({3, 7}, {cd(1.0, 0.0), cd(0.0, -1.0)}) == 3);
    CHECK(kind_of([] { strongest_index(RecoveryResult{}); }) == ErrorKind::EmptySupport);
}
