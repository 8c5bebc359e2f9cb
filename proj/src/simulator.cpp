#include "kronbeam/simulator.hpp"

#include "kronbeam/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kronbeam {

namespace {

void check_dims(const Channel& ch, const MeasurementSchedule& sched, const SystemConfig& cfg) {
    if (sched.n_tx != ch.n_tx() || sched.n_rx != ch.n_rx() || cfg.n_tx != ch.n_tx() || cfg.n_rx != ch.n_rx()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "channel is " + std::to_string(ch.n_rx()) + "x" + std::to_string(ch.n_tx()) + ", schedule " +
                        std::to_string(sched.n_rx) + "x" + std::to_string(sched.n_tx) + ", config " +
                        std::to_string(cfg.n_rx) + "x" + std::to_string(cfg.n_tx));
    }
    if (sched.rx.size() != sched.tx.size()) {
        throw Error(ErrorKind::DimensionMismatch, "tx and rx schedules differ in length");
    }
}

}  // namespace

MeasurementSet measure_physical(const Channel& ch, const MeasurementSchedule& sched, const ChannelModel& model, Rng& rng) {
    const SystemConfig& cfg = model.config();
    check_dims(ch, sched, cfg);
    MeasurementSet out;
    out.domain = MeasurementDomain::physical;
    out.noise_var = cfg.noise_var;
    out.y.resize(static_cast<Eigen::Index>(sched.k()));
    const double amplitude = std::sqrt(cfg.pilot_power);
    CVector noise(static_cast<Eigen::Index>(cfg.n_rx));
    for (std::size_t t = 0; t < sched.k(); ++t) {
        const CVector w = synthesize_beamformer(model.f_tx(), sched.tx[t]);
        const CVector g = synthesize_beamformer(model.f_rx(), sched.rx[t]);
        std::complex<double> y = amplitude * g.dot(ch.h_dense * w);  // dot() conjugates g
        if (cfg.noise_var > 0.0) {
            for (Eigen::Index i = 0; i < noise.size(); ++i) {
                noise(i) = complex_gaussian(rng, cfg.noise_var);
            }
            y += g.dot(noise);
        }
        out.y(static_cast<Eigen::Index>(t)) = y;
    }
    return out;
}

MeasurementSet measure_physical(const Channel& ch, const MeasurementSchedule& sched, const SystemConfig& cfg, Rng& rng) {
    return measure_physical(ch, sched, ChannelModel(cfg), rng);
}

MeasurementSet measure_virtual(const Channel& ch, const MeasurementSchedule& sched, const SystemConfig& cfg, Rng& rng) {
    check_dims(ch, sched, cfg);
    const std::size_t n_rx = ch.n_rx();
    const CVector& h = ch.h_v_vec;

    std::vector<std::size_t> support;
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        if (h(i) != std::complex<double>(0.0, 0.0)) {
            support.push_back(static_cast<std::size_t>(i));
        }
    }

    MeasurementSet out;
    out.domain = MeasurementDomain::virtual_domain;
    out.noise_var = cfg.noise_var;
    out.y.resize(static_cast<Eigen::Index>(sched.k()));
    for (std::size_t t = 0; t < sched.k(); ++t) {
        const auto& tx = sched.tx[t].ones;
        const auto& rx = sched.rx[t].ones;
        std::complex<double> sum{0.0, 0.0};
        if (support.size() < tx.size() * rx.size()) {
            for (auto flat : support) {
                const auto col = static_cast<std::uint32_t>(flat / n_rx);
                const auto row = static_cast<std::uint32_t>(flat % n_rx);
                if (std::binary_search(tx.begin(), tx.end(), col) && std::binary_search(rx.begin(), rx.end(), row)) {
                    sum += h(static_cast<Eigen::Index>(flat));
                }
            }
        } else {
            for (auto a : tx) {
                for (auto b : rx) {
                    sum += h(static_cast<Eigen::Index>(a * n_rx + b));
                }
            }
        }
        const double scale = std::sqrt(cfg.pilot_power / static_cast<double>(tx.size() * rx.size()));
        out.y(static_cast<Eigen::Index>(t)) = scale * sum + complex_gaussian(rng, cfg.noise_var);
    }
    return out;
}

double snr_to_noise_var(double snr_db, double pilot_power) {
    if (!(pilot_power > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "pilot power must be positive");
    }
    return pilot_power / std::pow(10.0, snr_db / 10.0);
}

}  // namespace kronbeam
