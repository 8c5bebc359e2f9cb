#ifndef KRONBEAM_SENSING_HPP
#define KRONBEAM_SENSING_HPP

#include "kronbeam/sparse_binary_matrix.hpp"

#include <cstdint>

/**
 * @file sensing.hpp
 *
 * @brief DeVore polynomial-graph matrices, their Kronecker composition, and
 * the coherence / Welch / restricted-isometry analyzers.
 */

namespace kronbeam {

/// Field order p (a prime power) and maximum polynomial degree r, 1 <= r < p.
struct DeVoreParams {
    std::uint32_t p = 2;
    std::uint32_t r = 1;

    void validate() const;

    std::uint64_t n_rows() const;  ///< p^2
    std::uint64_t n_cols() const;  ///< p^(r+1)
    std::uint64_t row_weight() const;  ///< p^r

    friend bool operator==(const DeVoreParams&, const DeVoreParams&) = default;
};

inline constexpr std::uint64_t kDefaultMaxColumns = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultMaxCells = std::uint64_t{1} << 34;
inline constexpr std::uint64_t kDefaultSubsetCap = 2'000'000;

/**
 * Column j is the graph of the j-th polynomial of degree <= r over GF(p)
 * (base-p digits of j are the coefficients, constant term first): it has a
 * one in row x*p + Q(x) for every field element x.
 *
 * Throws `InvalidParams` for r outside [1, p), `SizeOverflow` if p^(r+1) exceeds
 * `max_cols`, plus whatever the field construction throws for p.
 */
SparseBinaryMatrix devore_matrix(const DeVoreParams& params, std::uint64_t max_cols = kDefaultMaxColumns);

/// Kronecker product U (x) V: row i*rows(V)+j, column a*cols(V)+b.
SparseBinaryMatrix kron_rows(const SparseBinaryMatrix& u, const SparseBinaryMatrix& v,
                             std::uint64_t max_cells = kDefaultMaxCells);

/**
 * Exact worst pair behind the coherence: shared ones between columns
 * `col_a` and `col_b` over sqrt(weight_a * weight_b).
 */
struct CoherencePair {
    std::size_t col_a = 0;
    std::size_t col_b = 0;
    std::uint64_t shared = 0;
    std::uint64_t weight_a = 1;
    std::uint64_t weight_b = 1;

    double value() const;
};

/// Throws `ZeroColumn` if any column is empty.
CoherencePair max_coherence_pair(const SparseBinaryMatrix& m);

double coherence(const SparseBinaryMatrix& m);

/// sqrt((n - m) / (m (n - 1))); throws `InvalidDims` unless n > m >= 1.
double welch_bound(std::uint64_t m, std::uint64_t n);

/**
 * delta_L of the column-normalized matrix by exhaustive enumeration of every
 * L-column subset. Throws `TooLarge` if C(n_cols, L) exceeds `subset_cap`.
 */
double rip_constant_bruteforce(const SparseBinaryMatrix& m, std::size_t order,
                               std::uint64_t subset_cap = kDefaultSubsetCap);

/// Saturating binomial coefficient.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// z = ones per row, p = ones per column, for the transmit (1) and receive (2) factors.
struct SensingScaling {
    std::uint64_t z1 = 1;
    std::uint64_t z2 = 1;
    std::uint64_t p1 = 1;
    std::uint64_t p2 = 1;

    static SensingScaling from_devore(const DeVoreParams& tx, const DeVoreParams& rx);

    friend bool operator==(const SensingScaling&, const SensingScaling&) = default;
};

struct NormalizedViews {
    double row_scale = 1.0;       ///< S = row_scale * S_b has unit-norm rows
    double col_scale = 1.0;       ///< S_C = col_scale * S_b has unit-norm columns
    double solution_scale = 1.0;  ///< h_tilde = solution_scale * h_v
};

/// Throws `InvalidParams` if S_b's row/column weights disagree with `scaling`.
NormalizedViews normalize_views(const SparseBinaryMatrix& s_b, const SensingScaling& scaling);

struct CoherenceReport {
    double mu = 0.0;
    double welch_lower_bound = 0.0;
    std::uint64_t rip_order_guarantee = 1;
    double rip_constant_bound = 0.0;
};

/**
 * Coherence certificate for U_b (x) V_b built from DeVore factors. The RIP
 * order is the largest L with (L-1) * mu < 1, where mu = max(r1/p1, r2/p2).
 */
CoherenceReport coherence_report(const SparseBinaryMatrix& s_b, const DeVoreParams& tx, const DeVoreParams& rx);

/// The MbMKP sensing matrix with its factors and scaling.
struct KroneckerSensing {
    DeVoreParams tx;
    DeVoreParams rx;
    SparseBinaryMatrix u_b;
    SparseBinaryMatrix v_b;
    SparseBinaryMatrix s_b;
    SensingScaling scaling;
    NormalizedViews views;

    static KroneckerSensing build(const DeVoreParams& tx, const DeVoreParams& rx);
};

}  // namespace kronbeam

#endif
