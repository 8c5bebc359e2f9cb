#include "kronbeam/codebooks.hpp"
#include "kronbeam/error.hpp"

#include <doctest.h>

#include <set>

using namespace kronbeam;

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

std::vector<std::uint32_t> to_u32(std::span<const SparseBinaryMatrix::Index> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("deterministic schedule at (3,2) x (3,2)") {
    const auto u = devore_matrix({3, 2});
    const auto v = devore_matrix({3, 2});
    const auto sched = deterministic_schedule(u, v);
    CHECK(sched.k() == 81);
    CHECK(sched.n_tx == 27);
    CHECK(sched.n_rx == 27);
    CHECK(sched.scaling == SensingScaling{9, 9, 3, 3});
    for (std::size_t i = 0; i < 9; ++i) {
        for (std::size_t j = 0; j < 9; ++j) {
            const std::size_t t = i * 9 + j;
            CHECK(sched.tx[t].ones == to_u32(u.row(i)));
            CHECK(sched.rx[t].ones == to_u32(v.row(j)));
            CHECK(sched.tx[t].weight() == 9);
            CHECK(sched.rx[t].weight() == 9);
        }
    }
    CHECK(sched.stacked() == kron_rows(u, v));
}

TEST_CASE("stacked rows equal the Kronecker product for mixed factors") {
    const auto u = devore_matrix({2, 1});
    const auto v = devore_matrix({4, 3});
    CHECK(deterministic_schedule(u, v).stacked() == kron_rows(u, v));
}

TEST_CASE("deterministic schedule at (4,2) x (4,2)") {
    const auto d = devore_matrix({4, 2});
    const auto sched = deterministic_schedule(d, d);
    CHECK(sched.k() == 256);
    for (std::size_t t = 0; t < 16; ++t) {
        CHECK(sched.tx[t] == sched.tx[0]);
    }
    CHECK_FALSE(sched.tx[16] == sched.tx[0]);
}

TEST_CASE("single-row transmit factor reduces to the receive rows") {
    const SparseBinaryMatrix u(1, 4, std::vector<std::vector<SparseBinaryMatrix::Index>>{{0, 1, 2, 3}});
    const auto v = devore_matrix({3, 1});
    const auto sched = deterministic_schedule(u, v);
    CHECK(sched.k() == v.n_rows());
    for (std::size_t t = 0; t < sched.k(); ++t) {
        CHECK(sched.rx[t].ones == to_u32(v.row(t)));
        CHECK(sched.tx[t].ones == std::vector<std::uint32_t>{0, 1, 2, 3});
    }
}

TEST_CASE("deterministic schedule rejects uneven row weights") {
    const SparseBinaryMatrix uneven(2, 3, std::vector<std::vector<SparseBinaryMatrix::Index>>{{0, 1}, {2}});
    CHECK(kind_of([&] { deterministic_schedule(uneven, devore_matrix({2, 1})); }) == ErrorKind::InvalidWeight);
}

TEST_CASE("rdperm contract") {
    Rng rng(5);
    const auto sched = rdperm_schedule(27, 27, 9, 9, 81, rng);
    CHECK(sched.k() == 81);
    for (std::size_t t = 0; t < 81; ++t) {
        CHECK(sched.tx[t].weight() == 9);
        CHECK(sched.rx[t].weight() == 9);
        CHECK(std::is_sorted(sched.tx[t].ones.begin(), sched.tx[t].ones.end()));
        CHECK(std::set<std::uint32_t>(sched.rx[t].ones.begin(), sched.rx[t].ones.end()).size() == 9);
        CHECK(sched.tx[t].ones.back() < 27);
    }
    CHECK(sched.scaling.z1 == 9);
    CHECK(sched.scaling.p1 == 0);

    Rng full_rng(1);
    const auto full = rdperm_schedule(4, 3, 4, 1, 10, full_rng);
    for (const auto& sel : full.tx) {
        CHECK(sel.ones == std::vector<std::uint32_t>{0, 1, 2, 3});
    }
}

TEST_CASE("rdperm determinism and seed sensitivity") {
    Rng a(77);
    Rng b(77);
    Rng c(78);
    const auto sa = rdperm_schedule(27, 27, 9, 9, 81, a);
    CHECK(sa == rdperm_schedule(27, 27, 9, 9, 81, b));
    CHECK_FALSE(sa == rdperm_schedule(27, 27, 9, 9, 81, c));
}

TEST_CASE("rdperm subsets are uniform") {
    // every element of a 6-grid is selected with probability z/n = 1/3
    Rng rng(9);
    const auto sched = rdperm_schedule(6, 6, 2, 2, 30000, rng);
    std::vector<int> counts(6, 0);
    for (const auto& sel : sched.tx) {
        for (auto i : sel.ones) {
            ++counts[i];
        }
    }
    for (int c : counts) {
        CHECK(c == doctest::Approx(10000).epsilon(0.03));
    }
}

TEST_CASE("rdperm weight errors") {
    Rng rng(1);
    CHECK(kind_of([&] { rdperm_schedule(4, 4, 5, 1, 3, rng); }) == ErrorKind::InvalidWeight);
    CHECK(kind_of([&] { rdperm_schedule(4, 4, 1, 0, 3, rng); }) == ErrorKind::InvalidWeight);
}

TEST_CASE("synthesized beamformers") {
    const CMatrix f = dft_matrix(8);
    const CVector single = synthesize_beamformer(f, SelectionVector{8, {3}});
    CHECK((single - f.col(3)).norm() < 1e-15);

    const CMatrix f2 = dft_matrix(2);
    const CVector both = synthesize_beamformer(f2, SelectionVector{2, {0, 1}});
    CHECK((both - (f2.col(0) + f2.col(1)) / std::sqrt(2.0)).norm() < 1e-15);
    CHECK(std::abs(both.norm() - 1.0) < 1e-12);

    const CMatrix f27 = dft_matrix(27);
    const auto u = devore_matrix({3, 2});
    for (std::size_t i = 0; i < u.n_rows(); ++i) {
        const CVector w = synthesize_beamformer(f27, SelectionVector{27, to_u32(u.row(i))});
        CHECK(std::abs(w.norm() - 1.0) < 1e-12);
    }
    Rng rng(3);
    for (const auto& sel : rdperm_schedule(27, 27, 9, 9, 81, rng).rx) {
        CHECK(std::abs(synthesize_beamformer(f27, sel).norm() - 1.0) < 1e-12);
    }

    CHECK(kind_of([&] { synthesize_beamformer(f, SelectionVector{4, {0}}); }) == ErrorKind::DimensionMismatch);
}
