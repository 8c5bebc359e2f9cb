#include "kronbeam/experiments.hpp"

#include "kronbeam/error.hpp"
#include "kronbeam/simulator.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

namespace kronbeam {

std::string_view to_string(Scheme scheme) { return scheme == Scheme::mbmkp ? "mbmkp" : "rdperm"; }

Scheme parse_scheme(std::string_view text) {
    if (text == "mbmkp") {
        return Scheme::mbmkp;
    }
    if (text == "rdperm") {
        return Scheme::rdperm;
    }
    throw Error(ErrorKind::InvalidConfig, "scheme must be 'mbmkp' or 'rdperm', got '" + std::string(text) + "'");
}

void ExperimentParams::validate() const {
    tx.validate();
    rx.validate();
    if (n_paths < 1) {
        throw Error(ErrorKind::InvalidConfig, "need at least one path");
    }
    if (!(pilot_power > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "pilot power must be positive");
    }
}

double snr_after_bf(const Channel& ch, std::size_t est_index, const SystemConfig& cfg, double floor_db) {
    const FlatIndexMap map{ch.n_tx(), ch.n_rx()};
    const auto [eps_w, eps_g] = map.from_flat(est_index);
    const double gain = std::norm(ch.h_virtual(static_cast<Eigen::Index>(eps_g - 1), static_cast<Eigen::Index>(eps_w - 1)));
    if (cfg.noise_var <= 0.0) {
        return gain > 0.0 ? std::numeric_limits<double>::infinity() : floor_db;
    }
    if (gain <= 0.0) {
        return floor_db;
    }
    return std::max(10.0 * std::log10(gain / cfg.noise_var), floor_db);
}

Experiment::Experiment(Scheme scheme, ExperimentParams params)
    : scheme_(scheme),
      params_(params),
      model_([&] {
          params.validate();
          SystemConfig cfg;
          cfg.n_tx = params.n_tx();
          cfg.n_rx = params.n_rx();
          cfg.n_paths = params.n_paths;
          cfg.pilot_power = params.pilot_power;
          cfg.gain_var = params.gain_var;
          return cfg;
      }()) {
    if (scheme_ == Scheme::mbmkp) {
        schedule_ = deterministic_schedule(devore_matrix(params_.tx), devore_matrix(params_.rx));
        op_ = SensingOperator::from_schedule(*schedule_, params_.column_scaling);
    }
}

TrialResult Experiment::run_trial(double snr_db, Rng& rng) const {
    // Separate streams so that both schemes see the same channel and noise for a given seed.
    Rng channel_rng(rng());
    Rng schedule_rng(rng());
    Rng noise_rng(rng());

    SystemConfig cfg = model_.config();
    cfg.noise_var = snr_to_noise_var(snr_db, cfg.pilot_power);

    const Channel ch = model_.sample(params_.grid, channel_rng);

    std::optional<MeasurementSchedule> drawn;
    std::optional<SensingOperator> drawn_op;
    if (scheme_ == Scheme::rdperm) {
        drawn = rdperm_schedule(cfg.n_tx, cfg.n_rx, static_cast<std::size_t>(params_.tx.row_weight()),
                                static_cast<std::size_t>(params_.rx.row_weight()), params_.k(), schedule_rng);
        drawn_op = SensingOperator::from_schedule(*drawn, params_.column_scaling);
    }
    const MeasurementSchedule& sched = drawn ? *drawn : *schedule_;
    const SensingOperator& op = drawn_op ? *drawn_op : *op_;

    const MeasurementSet meas = measure_virtual(ch, sched, cfg, noise_rng);
    const RecoveryResult res = omp(op, meas.y, params_.n_paths);

    TrialResult out;
    out.true_index = strongest_flat_index(ch.h_v_vec);
    if (!res.support.empty()) {
        out.estimated_index = strongest_index(res.support, rescale_to_virtual(op, res));
        out.snr_ab_db = snr_after_bf(ch, out.estimated_index, cfg, params_.snr_ab_floor_db);
    } else {
        out.snr_ab_db = params_.snr_ab_floor_db;
    }
    out.correct = out.estimated_index == out.true_index;
    return out;
}

TrialResult run_trial(Scheme scheme, const ExperimentParams& params, double snr_db, Rng& rng) {
    return Experiment(scheme, params).run_trial(snr_db, rng);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t snr_index, std::size_t trial_index) {
    return derive_seed(base_seed, {snr_index, trial_index});
}

SweepTable sweep(Scheme scheme, const ExperimentParams& params, const std::vector<double>& snr_list_db,
                 std::size_t trials, std::uint64_t base_seed, unsigned threads) {
    if (trials < 1) {
        throw Error(ErrorKind::InvalidConfig, "trials must be >= 1");
    }
    const Experiment experiment(scheme, params);
    const std::size_t n_jobs = snr_list_db.size() * trials;
    std::vector<TrialResult> results(n_jobs);

    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto worker = [&] {
        try {
            for (std::size_t job = next++; job < n_jobs; job = next++) {
                const std::size_t point = job / trials;
                const std::size_t trial = job % trials;
                Rng rng(trial_seed(base_seed, point, trial));
                results[job] = experiment.run_trial(snr_list_db[point], rng);
            }
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = n_jobs;
        }
    };
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n_jobs, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    SweepTable table;
    for (std::size_t point = 0; point < snr_list_db.size(); ++point) {
        std::size_t correct = 0;
        double snr_ab_sum = 0.0;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const TrialResult& r = results[point * trials + trial];
            correct += r.correct ? 1 : 0;
            snr_ab_sum += r.snr_ab_db;
        }
        SweepRow row;
        row.snr_db = snr_list_db[point];
        row.trials = trials;
        row.pca = static_cast<double>(correct) / static_cast<double>(trials);
        row.pca_ci95_halfwidth = 1.96 * std::sqrt(row.pca * (1.0 - row.pca) / static_cast<double>(trials));
        row.mean_snr_ab_db = snr_ab_sum / static_cast<double>(trials);
        row.scheme = scheme;
        row.n_tx = params.n_tx();
        row.n_rx = params.n_rx();
        row.k = params.k();
        row.seed = base_seed;
        table.rows.push_back(row);
    }
    return table;
}

std::vector<double> snr_range(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) {
        throw Error(ErrorKind::InvalidConfig, "SNR range needs finite start <= stop and step > 0");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = start + static_cast<double>(i) * step;
    }
    return out;
}

}  // namespace kronbeam
