#include "kronbeam/error.hpp"
#include "kronbeam/experiments.hpp"

#include <doctest.h>

#include <cmath>

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

Channel on_grid_path(std::size_t n, std::size_t c_tx, std::size_t c_rx, cd gain) {
    const ChannelModel model(SystemConfig{n, n, 1});
    PathSet paths;
    paths.aod = {quantized_grid(n)[c_tx]};
    paths.aoa = {quantized_grid(n)[c_rx]};
    paths.gains = {gain};
    return model.from_paths(paths);
}

}  // namespace

TEST_CASE("SNR after beamforming examples") {
    const Channel ch = on_grid_path(27, 4, 10, cd(1.0, 0.0));
    const FlatIndexMap map{27, 27};
    const std::size_t eps = map.to_flat(11, 5);
    const SystemConfig unit{27, 27, 1, 1.0, 1.0};
    CHECK(snr_after_bf(ch, eps, unit) == doctest::Approx(10.0 * std::log10(729.0)).epsilon(1e-12));
    CHECK(snr_after_bf(ch, eps, unit) == doctest::Approx(28.627).epsilon(1e-4));

    // an exact-zero virtual entry hits the floor
    CHECK(snr_after_bf(ch, 1, unit) == kSnrAbFloorDb);
    CHECK(snr_after_bf(ch, 1, unit, -60.0) == -60.0);

    const SystemConfig doubled{27, 27, 1, 1.0, 2.0};
    CHECK(snr_after_bf(ch, eps, unit) - snr_after_bf(ch, eps, doubled) == doctest::Approx(3.0103).epsilon(1e-4));

    const SystemConfig noiseless{27, 27, 1, 1.0, 0.0};
    CHECK(std::isinf(snr_after_bf(ch, eps, noiseless)));
    CHECK(kind_of([&] { snr_after_bf(ch, 730, unit); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("forced true estimate gives the closed form") {
    Rng rng(19);
    const ChannelModel model(SystemConfig{27, 27, 1});
    for (int i = 0; i < 50; ++i) {
        const Channel ch = model.sample(GridMode::on, rng);
        const double noise_var = 0.37;
        const SystemConfig cfg{27, 27, 1, 1.0, noise_var};
        const double expected = 10.0 * std::log10(729.0 * std::norm(ch.paths.gains[0]) / noise_var);
        CHECK(snr_after_bf(ch, strongest_flat_index(ch.h_v_vec), cfg) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("noiseless MbMKP trials are always correct") {
    for (auto params : {ExperimentParams{}, ExperimentParams{{2, 1}, {3, 1}}}) {
        const Experiment exp(Scheme::mbmkp, params);
        Rng rng(3);
        for (int i = 0; i < 300; ++i) {
            const auto r = exp.run_trial(INFINITY, rng);
            CHECK(r.correct);
            CHECK(r.estimated_index == r.true_index);
            CHECK(std::isinf(r.snr_ab_db));
        }
    }
}

TEST_CASE("trials are deterministic for a seed") {
    for (auto scheme : {Scheme::mbmkp, Scheme::rdperm}) {
        const ExperimentParams params;
        for (std::uint64_t seed : {1ULL, 99ULL}) {
            Rng a(seed);
            Rng b(seed);
            CHECK(run_trial(scheme, params, -10.0, a) == run_trial(scheme, params, -10.0, b));
        }
    }
    CHECK(trial_seed(1, 0, 0) != trial_seed(1, 0, 1));
    CHECK(trial_seed(1, 0, 1) != trial_seed(1, 1, 0));
    CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
}

TEST_CASE("trial fields are consistent") {
    const Experiment exp(Scheme::rdperm, ExperimentParams{});
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto r = exp.run_trial(-10.0, rng);
        CHECK(r.true_index >= 1);
        CHECK(r.true_index <= 729);
        CHECK(r.estimated_index <= 729);
        CHECK(r.correct == (r.estimated_index == r.true_index));
        CHECK(std::isfinite(r.snr_ab_db));
        CHECK(r.snr_ab_db >= kSnrAbFloorDb);
    }
}

TEST_CASE("single-trial sweep") {
    const auto table = sweep(Scheme::mbmkp, ExperimentParams{}, {-10.0, 0.0}, 1, 4);
    REQUIRE(table.rows.size() == 2);
    for (const auto& row : table.rows) {
        CHECK((row.pca == 0.0 || row.pca == 1.0));
        CHECK(row.pca_ci95_halfwidth == 0.0);
        CHECK(row.trials == 1);
        CHECK(row.k == 81);
        CHECK(row.n_tx == 27);
        CHECK(row.seed == 4);
    }
}

TEST_CASE("sweep results do not depend on the thread count") {
    const auto snrs = snr_range(-15.0, 0.0, 5.0);
    for (auto scheme : {Scheme::mbmkp, Scheme::rdperm}) {
        const auto serial = sweep(scheme, ExperimentParams{}, snrs, 150, 8, 1);
        CHECK(serial == sweep(scheme, ExperimentParams{}, snrs, 150, 8, 4));
        CHECK(serial == sweep(scheme, ExperimentParams{}, snrs, 150, 8, 3));
        CHECK_FALSE(serial == sweep(scheme, ExperimentParams{}, snrs, 150, 9, 1));
    }
}

TEST_CASE("sweep statistics are self-consistent") {
    const auto table = sweep(Scheme::mbmkp, ExperimentParams{}, {-10.0}, 400, 2);
    const auto& row = table.rows.at(0);
    CHECK(row.pca_ci95_halfwidth == doctest::Approx(1.96 * std::sqrt(row.pca * (1.0 - row.pca) / 400.0)));
    // rebuild the row from individual trials
    const Experiment exp(Scheme::mbmkp, ExperimentParams{});
    int correct = 0;
    double snr_sum = 0.0;
    for (std::size_t t = 0; t < 400; ++t) {
        Rng rng(trial_seed(2, 0, t));
        const auto r = exp.run_trial(-10.0, rng);
        correct += r.correct ? 1 : 0;
        snr_sum += r.snr_ab_db;
    }
    CHECK(row.pca == doctest::Approx(correct / 400.0).epsilon(1e-15));
    CHECK(row.mean_snr_ab_db == doctest::Approx(snr_sum / 400.0).epsilon(1e-12));
}

TEST_CASE("high SNR gives perfect alignment") {
    const auto table = sweep(Scheme::mbmkp, ExperimentParams{}, {30.0}, 500, 1);
    CHECK(table.rows.at(0).pca == 1.0);
}

TEST_CASE("PCA is non-decreasing in SNR up to Monte Carlo noise") {
    const auto snrs = snr_range(-20.0, 0.0, 2.5);
    for (auto scheme : {Scheme::mbmkp, Scheme::rdperm}) {
        const auto table = sweep(scheme, ExperimentParams{}, snrs, 2000, 1);
        for (std::size_t i = 1; i < table.rows.size(); ++i) {
            const auto& prev = table.rows[i - 1];
            const auto& cur = table.rows[i];
            CHECK(cur.pca >= prev.pca - 2.0 * std::max(prev.pca_ci95_halfwidth, cur.pca_ci95_halfwidth));
        }
    }
}

TEST_CASE("multi-path and off-grid trials run") {
    ExperimentParams params;
    params.n_paths = 2;
    params.grid = GridMode::off;
    const auto table = sweep(Scheme::mbmkp, params, {20.0}, 100, 3);
    CHECK(table.rows.at(0).pca > 0.5);
}

TEST_CASE("configuration errors") {
    CHECK(kind_of([] { sweep(Scheme::mbmkp, ExperimentParams{}, {0.0}, 0, 1); }) == ErrorKind::InvalidConfig);
    ExperimentParams bad;
    bad.n_paths = 0;
    CHECK(kind_of([&] { Experiment(Scheme::mbmkp, bad); }) == ErrorKind::InvalidConfig);
    CHECK(kind_of([] { Experiment(Scheme::mbmkp, ExperimentParams{{3, 3}, {3, 2}}); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([] { parse_scheme("random"); }) == ErrorKind::InvalidConfig);
    CHECK(parse_scheme("rdperm") == Scheme::rdperm);
    CHECK(to_string(Scheme::mbmkp) == "mbmkp");
}

TEST_CASE("SNR range") {
    const auto r = snr_range(-20.0, 0.0, 2.5);
    REQUIRE(r.size() == 9);
    CHECK(r.front() == -20.0);
    CHECK(r.back() == 0.0);
    CHECK(r[3] == -12.5);
    CHECK(snr_range(5.0, 5.0, 1.0) == std::vector<double>{5.0});
    CHECK(kind_of([] { snr_range(0.0, -1.0, 1.0); }) == ErrorKind::InvalidConfig);
    CHECK(kind_of([] { snr_range(0.0, 1.0, 0.0); }) == ErrorKind::InvalidConfig);
}
