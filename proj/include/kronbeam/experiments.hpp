#ifndef KRONBEAM_EXPERIMENTS_HPP
#define KRONBEAM_EXPERIMENTS_HPP

#include "kronbeam/channel.hpp"
#include "kronbeam/codebooks.hpp"
#include "kronbeam/recovery.hpp"
#include "kronbeam/sensing.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace kronbeam {

/// Deterministic Kronecker (MbMKP) training or the random-permutation (RdPerm) baseline.
enum class Scheme { mbmkp, rdperm };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

inline constexpr double kSnrAbFloorDb = -100.0;

struct ExperimentParams {
    DeVoreParams tx{3, 2};
    DeVoreParams rx{3, 2};
    std::size_t n_paths = 1;
    GridMode grid = GridMode::on;
    double pilot_power = 1.0;
    double gain_var = 1.0;
    double snr_ab_floor_db = kSnrAbFloorDb;
    /// Recovery view for both schemes; identical for MbMKP.
    ColumnScaling column_scaling = ColumnScaling::per_column;

    std::size_t n_tx() const { return static_cast<std::size_t>(tx.n_cols()); }
    std::size_t n_rx() const { return static_cast<std::size_t>(rx.n_cols()); }
    /// Measurement budget p1^2 p2^2, shared by both schemes.
    std::size_t k() const { return static_cast<std::size_t>(tx.n_rows() * rx.n_rows()); }
    void validate() const;
};

struct TrialResult {
    bool correct = false;
    double snr_ab_db = kSnrAbFloorDb;
    std::size_t true_index = 0;       ///< 1-based flat index of the strongest h_v entry
    std::size_t estimated_index = 0;  ///< 0 when recovery returned nothing

    friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct SweepRow {
    double snr_db = 0.0;
    double pca = 0.0;
    double pca_ci95_halfwidth = 0.0;
    double mean_snr_ab_db = 0.0;
    std::size_t trials = 0;
    Scheme scheme = Scheme::mbmkp;
    std::size_t n_tx = 0;
    std::size_t n_rx = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepTable {
    std::vector<SweepRow> rows;

    friend bool operator==(const SweepTable&, const SweepTable&) = default;
};

/**
 * 10 log10(|H_v[eps_g, eps_w]|^2 / noise_var) for the one-hot beams at
 * `est_index`, clamped below at `floor_db`. Returns +inf for a nonzero
 * numerator with zero noise. Throws `IndexOutOfRange`.
 */
double snr_after_bf(const Channel& ch, std::size_t est_index, const SystemConfig& cfg,
                    double floor_db = kSnrAbFloorDb);

/**
 * One alignment scheme at one array geometry. Construction builds the
 * channel model and, for MbMKP, the fixed schedule and sensing operator,
 * which are then shared read-only by every trial.
 */
class Experiment {
public:
    Experiment(Scheme scheme, ExperimentParams params);

    Scheme scheme() const { return scheme_; }
    const ExperimentParams& params() const { return params_; }

    /**
     * Draws a channel, a schedule (RdPerm only) and noise from independent
     * streams seeded off `rng`, recovers with OMP at sparsity L and scores
     * the strongest recovered index. Pass snr_db = +inf for noiseless
     * measurements.
     */
    TrialResult run_trial(double snr_db, Rng& rng) const;

private:
    Scheme scheme_;
    ExperimentParams params_;
    ChannelModel model_;
    std::optional<MeasurementSchedule> schedule_;
    std::optional<SensingOperator> op_;
};

TrialResult run_trial(Scheme scheme, const ExperimentParams& params, double snr_db, Rng& rng);

/// Seed of trial `trial_index` at SNR point `snr_index`.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t snr_index, std::size_t trial_index);

/**
 * Runs `trials` seeded trials per SNR point. Results depend only on the
 * inputs, not on `threads` (0 = hardware concurrency).
 */
SweepTable sweep(Scheme scheme, const ExperimentParams& params, const std::vector<double>& snr_list_db,
                 std::size_t trials, std::uint64_t base_seed, unsigned threads = 0);

/// start, start + step, ..., up to stop (inclusive, with a small tolerance).
std::vector<double> snr_range(double start, double stop, double step);

}  // namespace kronbeam

#endif
