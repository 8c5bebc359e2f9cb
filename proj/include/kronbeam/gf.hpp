#ifndef KRONBEAM_GF_HPP
#define KRONBEAM_GF_HPP

#include <cstdint>
#include <vector>

/**
 * @file gf.hpp
 *
 * @brief Arithmetic over the finite fields GF(p^k), k <= 3.
 *
 * Elements are encoded as integers 0..q-1 whose base-p digits are the
 * coefficients of the element's polynomial representation, least
 * significant digit first. Code 0 is the additive identity and code 1 the
 * multiplicative identity.
 */

namespace kronbeam::gf {

struct FieldElement {
    std::uint32_t code = 0;

    friend bool operator==(FieldElement, FieldElement) = default;
};

/// Polynomial over a field; `coeffs[i]` multiplies x^i. Leading zeros are kept.
struct FieldPoly {
    std::vector<FieldElement> coeffs;

    std::size_t degree_bound() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

class Field {
public:
    /**
     * Builds GF(q) with a pinned reduction polynomial.
     * Throws `Error` with `NotPrimePower` if q is not a prime power (or q < 2),
     * and `UnsupportedDegree` if q = p^k with k > 3.
     */
    explicit Field(std::uint32_t q);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return k_; }
    std::uint32_t order() const { return q_; }

    /// Monic reduction polynomial over GF(p), lowest coefficient first, length degree()+1.
    const std::vector<std::uint32_t>& reduction_polynomial() const { return modulus_; }

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
    FieldElement mul(FieldElement a, FieldElement b) const;
    FieldElement pow(FieldElement a, std::uint64_t e) const;

    /// Horner evaluation of sum coeffs[i] * x^i.
    FieldElement eval(const FieldPoly& poly, FieldElement x) const;

    /// All elements in increasing code order.
    std::vector<FieldElement> elements() const;

    /**
     * The `index`-th polynomial with `n_coeffs` coefficients, reading `index`
     * in base q with the least significant digit as the constant term.
     */
    FieldPoly poly_from_index(std::uint64_t index, std::size_t n_coeffs) const;

    bool contains(FieldElement a) const { return a.code < q_; }

private:
    std::uint32_t slow_add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;

    std::uint32_t p_ = 0;
    std::uint32_t k_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;

    // Cayley tables, filled for small fields only.
    std::vector<std::uint32_t> add_table_;
    std::vector<std::uint32_t> mul_table_;
};

/// Decomposes q = p^k. Returns false if q is not a prime power.
bool prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& k);

bool is_prime(std::uint32_t n);

/**
 * True if the monic polynomial (coefficients over GF(p), lowest first) has no
 * factor of degree <= 1 over GF(p). For degree <= 3 this is equivalent to
 * irreducibility.
 */
bool has_no_roots(const std::vector<std::uint32_t>& monic, std::uint32_t p);

/**
 * First monic polynomial of the given degree with no roots over GF(p),
 * enumerating the lower coefficients as a base-p integer (constant term least
 * significant).
 */
std::vector<std::uint32_t> first_rootless_monic(std::uint32_t p, std::uint32_t degree);

}  // namespace kronbeam::gf

#endif
