#ifndef KRONBEAM_CODEBOOKS_HPP
#define KRONBEAM_CODEBOOKS_HPP

#include "kronbeam/channel.hpp"
#include "kronbeam/random.hpp"
#include "kronbeam/sensing.hpp"
#include "kronbeam/sparse_binary_matrix.hpp"

#include <cstdint>
#include <vector>

namespace kronbeam {

/// Binary choice of DFT columns (narrow beams) switched on for one measurement.
struct SelectionVector {
    std::size_t length = 0;
    std::vector<std::uint32_t> ones;  ///< sorted, 0-based

    std::size_t weight() const { return ones.size(); }
    void validate() const;

    friend bool operator==(const SelectionVector&, const SelectionVector&) = default;
};

/**
 * Ordered (transmit, receive) selection pairs. Measurement t uses tx[t] at
 * the base station and rx[t] at the user.
 *
 * `scaling.p1` / `scaling.p2` hold the per-column weights of the transmit and
 * receive factors when those are constant (the deterministic scheme) and are
 * 0 otherwise.
 */
struct MeasurementSchedule {
    std::size_t n_tx = 0;
    std::size_t n_rx = 0;
    std::vector<SelectionVector> tx;
    std::vector<SelectionVector> rx;
    SensingScaling scaling;

    std::size_t k() const { return tx.size(); }

    /// Binary sensing matrix whose row t is tx[t]^T (x) rx[t]^T.
    SparseBinaryMatrix stacked() const;

    friend bool operator==(const MeasurementSchedule&, const MeasurementSchedule&) = default;
};

/**
 * Full cross product of the rows of U_b (transmit) and V_b (receive),
 * transmit-major: measurement i*rows(V_b)+j pairs row i of U_b with row j of
 * V_b. Throws `InvalidWeight` if either factor has non-constant row weight.
 */
MeasurementSchedule deterministic_schedule(const SparseBinaryMatrix& u_b, const SparseBinaryMatrix& v_b);

/**
 * Random-permutation baseline: every measurement independently draws a
 * uniform z1-subset of the transmit grid and a uniform z2-subset of the
 * receive grid. Throws `InvalidWeight` unless 1 <= z <= n.
 */
MeasurementSchedule rdperm_schedule(std::size_t n_tx, std::size_t n_rx, std::size_t z1, std::size_t z2, std::size_t k,
                                    Rng& rng);

/// F * indicator(sel) / sqrt(z).
CVector synthesize_beamformer(const CMatrix& f, const SelectionVector& sel);

}  // namespace kronbeam

#endif
