#ifndef KRONBEAM_CHANNEL_HPP
#define KRONBEAM_CHANNEL_HPP

#include "kronbeam/random.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

/**
 * @file channel.hpp
 *
 * @brief Clustered narrowband channel between two half-wavelength ULAs and its
 * DFT-domain (virtual) representation.
 */

namespace kronbeam {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class GridMode { on, off };

std::string_view to_string(GridMode mode);
GridMode parse_grid_mode(std::string_view text);

struct SystemConfig {
    std::size_t n_tx = 1;
    std::size_t n_rx = 1;
    std::size_t n_paths = 1;
    double pilot_power = 1.0;
    double noise_var = 0.0;
    double gain_var = 1.0;  ///< variance of every path gain

    void validate() const;
};

struct PathSet {
    std::vector<double> aod;  ///< radians, [-pi/2, pi/2]
    std::vector<double> aoa;
    std::vector<std::complex<double>> gains;
    /// 0-based grid indices when the angles were drawn on the quantized grid.
    std::vector<std::size_t> aod_grid;
    std::vector<std::size_t> aoa_grid;

    std::size_t size() const { return gains.size(); }
};

struct Channel {
    PathSet paths;
    CMatrix h_dense;    ///< N_R x N_T
    CMatrix h_virtual;  ///< F_R^H H F_T
    CVector h_v_vec;    ///< column-major vec(h_virtual)

    std::size_t n_tx() const { return static_cast<std::size_t>(h_dense.cols()); }
    std::size_t n_rx() const { return static_cast<std::size_t>(h_dense.rows()); }
};

/// (1/sqrt(n)) [1, e^{j pi sin(angle)}, ..., e^{j (n-1) pi sin(angle)}]^T
CVector array_response(double angle, std::size_t n);
inline CVector array_response_tx(double theta, std::size_t n_tx) { return array_response(theta, n_tx); }
inline CVector array_response_rx(double phi, std::size_t n_rx) { return array_response(phi, n_rx); }

/// Sine of grid angle `c` (0-based): 2c/n - 1.
double grid_sine(std::size_t c, std::size_t n);

/// asin(2c/n - 1) for c = 0..n-1.
std::vector<double> quantized_grid(std::size_t n);

/// Columns are array responses at the quantized grid angles; unitary.
CMatrix dft_matrix(std::size_t n);

/**
 * Holds the two DFT bases for a fixed array geometry so that repeated
 * channel draws do not rebuild them.
 */
class ChannelModel {
public:
    explicit ChannelModel(SystemConfig cfg);

    const SystemConfig& config() const { return cfg_; }
    const CMatrix& f_tx() const { return f_tx_; }
    const CMatrix& f_rx() const { return f_rx_; }

    /// H = sqrt(N_T N_R / L) sum_l alpha_l b(phi_l) a(theta_l)^H, then the virtual form.
    Channel from_paths(PathSet paths) const;

    /**
     * Draws L paths with CN(0, gain_var) gains. On-grid angles are uniform
     * over the quantized grids with distinct (AoD, AoA) pairs; off-grid
     * angles are uniform over [-pi/2, pi/2].
     */
    Channel sample(GridMode mode, Rng& rng) const;

private:
    SystemConfig cfg_;
    CMatrix f_tx_;
    CMatrix f_rx_;
};

inline Channel sample_channel(const SystemConfig& cfg, GridMode mode, Rng& rng) {
    return ChannelModel(cfg).sample(mode, rng);
}

/**
 * Column-major flat indexing of an N_R x N_T virtual channel, 1-based as in
 * the alignment formulas: eps = (eps_w - 1) N_R + eps_g.
 */
struct FlatIndexMap {
    std::size_t n_tx = 1;
    std::size_t n_rx = 1;

    /// (receive row eps_g, transmit column eps_w), both 1-based -> eps.
    std::size_t to_flat(std::size_t row_g, std::size_t col_w) const;

    /// eps -> (eps_w, eps_g).
    std::pair<std::size_t, std::size_t> from_flat(std::size_t eps) const;
};

/// 1-based flat index of the largest-magnitude entry (lowest index on ties).
std::size_t strongest_flat_index(const CVector& h_v);

}  // namespace kronbeam

#endif
