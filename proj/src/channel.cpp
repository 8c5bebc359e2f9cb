#include "kronbeam/channel.hpp"

#include "kronbeam/error.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace kronbeam {

std::string_view to_string(GridMode mode) { return mode == GridMode::on ? "on" : "off"; }

GridMode parse_grid_mode(std::string_view text) {
    if (text == "on") {
        return GridMode::on;
    }
    if (text == "off") {
        return GridMode::off;
    }
    throw Error(ErrorKind::InvalidConfig, "grid mode must be 'on' or 'off', got '" + std::string(text) + "'");
}

void SystemConfig::validate() const {
    if (n_tx < 1 || n_rx < 1) {
        throw Error(ErrorKind::InvalidConfig, "antenna counts must be >= 1");
    }
    if (n_paths < 1) {
        throw Error(ErrorKind::InvalidConfig, "need at least one path");
    }
    if (!(pilot_power > 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "pilot power must be positive");
    }
    if (!(noise_var >= 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "noise variance must be non-negative");
    }
    if (!(gain_var >= 0.0)) {
        throw Error(ErrorKind::InvalidConfig, "gain variance must be non-negative");
    }
}

CVector array_response(double angle, std::size_t n) {
    CVector out(static_cast<Eigen::Index>(n));
    const double phase = std::numbers::pi * std::sin(angle);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        out(static_cast<Eigen::Index>(i)) = std::polar(norm, phase * static_cast<double>(i));
    }
    return out;
}

double grid_sine(std::size_t c, std::size_t n) {
    return 2.0 * static_cast<double>(c) / static_cast<double>(n) - 1.0;
}

std::vector<double> quantized_grid(std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t c = 0; c < n; ++c) {
        out[c] = std::asin(grid_sine(c, n));
    }
    return out;
}

CMatrix dft_matrix(std::size_t n) {
    // Built from the grid sines directly rather than sin(asin(.)), which keeps
    // the columns orthogonal to rounding level.
    const auto dim = static_cast<Eigen::Index>(n);
    CMatrix f(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            // reduce the phase mod 2 pi exactly in integer arithmetic: pi * i * (2c - n) / n
            const long long num = static_cast<long long>(i) * (2 * static_cast<long long>(c) - static_cast<long long>(n));
            const long long period = 2 * static_cast<long long>(n);
            long long reduced = num % period;
            if (reduced < 0) {
                reduced += period;
            }
            f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                std::polar(norm, std::numbers::pi * static_cast<double>(reduced) / static_cast<double>(n));
        }
    }
    return f;
}

ChannelModel::ChannelModel(SystemConfig cfg) : cfg_(cfg) {
    cfg_.validate();
    f_tx_ = dft_matrix(cfg_.n_tx);
    f_rx_ = dft_matrix(cfg_.n_rx);
}

Channel ChannelModel::from_paths(PathSet paths) const {
    const std::size_t l = paths.size();
    if (paths.aod.size() != l || paths.aoa.size() != l) {
        throw Error(ErrorKind::DimensionMismatch, "path angle and gain lists differ in length");
    }
    const auto n_rx = static_cast<Eigen::Index>(cfg_.n_rx);
    const auto n_tx = static_cast<Eigen::Index>(cfg_.n_tx);
    const bool on_grid = paths.aod_grid.size() == l && paths.aoa_grid.size() == l;

    Channel ch;
    ch.h_dense = CMatrix::Zero(n_rx, n_tx);
    const double scale = l == 0 ? 0.0
                                : std::sqrt(static_cast<double>(cfg_.n_tx) * static_cast<double>(cfg_.n_rx) /
                                            static_cast<double>(l));
    for (std::size_t i = 0; i < l; ++i) {
        // on-grid paths reuse the exact DFT columns
        const CVector a = on_grid ? CVector(f_tx_.col(static_cast<Eigen::Index>(paths.aod_grid[i])))
                                  : array_response_tx(paths.aod[i], cfg_.n_tx);
        const CVector b = on_grid ? CVector(f_rx_.col(static_cast<Eigen::Index>(paths.aoa_grid[i])))
                                  : array_response_rx(paths.aoa[i], cfg_.n_rx);
        ch.h_dense.noalias() += (scale * paths.gains[i]) * b * a.adjoint();
    }
    ch.h_virtual = f_rx_.adjoint() * ch.h_dense * f_tx_;
    ch.h_v_vec = Eigen::Map<const CVector>(ch.h_virtual.data(), ch.h_virtual.size());
    ch.paths = std::move(paths);
    return ch;
}

Channel ChannelModel::sample(GridMode mode, Rng& rng) const {
    const std::size_t l = cfg_.n_paths;
    PathSet paths;
    paths.gains.reserve(l);
    paths.aod.reserve(l);
    paths.aoa.reserve(l);
    if (mode == GridMode::on) {
        if (l > cfg_.n_tx * cfg_.n_rx) {
            throw Error(ErrorKind::InvalidConfig, "more paths than distinct grid pairs");
        }
        std::uniform_int_distribution<std::size_t> pick_tx(0, cfg_.n_tx - 1);
        std::uniform_int_distribution<std::size_t> pick_rx(0, cfg_.n_rx - 1);
        std::set<std::pair<std::size_t, std::size_t>> used;
        while (paths.aod_grid.size() < l) {
            const std::size_t c_tx = pick_tx(rng);
            const std::size_t c_rx = pick_rx(rng);
            if (!used.emplace(c_tx, c_rx).second) {
                continue;
            }
            paths.aod_grid.push_back(c_tx);
            paths.aoa_grid.push_back(c_rx);
            paths.aod.push_back(std::asin(grid_sine(c_tx, cfg_.n_tx)));
            paths.aoa.push_back(std::asin(grid_sine(c_rx, cfg_.n_rx)));
        }
    } else {
        std::uniform_real_distribution<double> angle(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
        for (std::size_t i = 0; i < l; ++i) {
            paths.aod.push_back(angle(rng));
            paths.aoa.push_back(angle(rng));
        }
    }
    for (std::size_t i = 0; i < l; ++i) {
        paths.gains.push_back(complex_gaussian(rng, cfg_.gain_var));
    }
    return from_paths(std::move(paths));
}

std::size_t FlatIndexMap::to_flat(std::size_t row_g, std::size_t col_w) const {
    if (row_g < 1 || row_g > n_rx || col_w < 1 || col_w > n_tx) {
        throw Error(ErrorKind::IndexOutOfRange, "grid pair (" + std::to_string(row_g) + ", " + std::to_string(col_w) +
                                                    ") outside " + std::to_string(n_rx) + "x" + std::to_string(n_tx));
    }
    return (col_w - 1) * n_rx + row_g;
}

std::pair<std::size_t, std::size_t> FlatIndexMap::from_flat(std::size_t eps) const {
    if (eps < 1 || eps > n_tx * n_rx) {
        throw Error(ErrorKind::IndexOutOfRange, "flat index " + std::to_string(eps) + " outside 1.." +
                                                    std::to_string(n_tx * n_rx));
    }
    return {(eps - 1) / n_rx + 1, (eps - 1) % n_rx + 1};
}

std::size_t strongest_flat_index(const CVector& h_v) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (Eigen::Index i = 0; i < h_v.size(); ++i) {
        const double mag = std::norm(h_v(i));
        if (mag > best_mag) {
            best_mag = mag;
            best = static_cast<std::size_t>(i);
        }
    }
    return best + 1;
}

}  // namespace kronbeam
