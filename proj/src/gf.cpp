#include "kronbeam/gf.hpp"

#include "kronbeam/error.hpp"

#include <string>

namespace kronbeam::gf {

namespace {

constexpr std::uint32_t kMaxDegree = 3;
constexpr std::uint32_t kTableLimit = 256;

struct PinnedModulus {
    std::uint32_t p;
    std::uint32_t k;
    std::vector<std::uint32_t> coeffs;
};

// Fixed representations so that every sensing matrix is reproducible bit for
// bit. Fields not listed fall back to first_rootless_monic().
const std::vector<PinnedModulus>& pinned_moduli() {
    static const std::vector<PinnedModulus> table = {
        {2, 2, {1, 1, 1}},     // x^2 + x + 1
        {2, 3, {1, 1, 0, 1}},  // x^3 + x + 1
        {3, 2, {1, 0, 1}},     // x^2 + 1
        {5, 2, {2, 0, 1}},     // x^2 + 2
    };
    return table;
}

std::vector<std::uint32_t> to_digits(std::uint32_t code, std::uint32_t p, std::uint32_t k) {
    std::vector<std::uint32_t> digits(k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
        digits[i] = code % p;
        code /= p;
    }
    return digits;
}

std::uint32_t from_digits(const std::vector<std::uint32_t>& digits, std::uint32_t p) {
    std::uint32_t code = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        code = code * p + digits[i];
    }
    return code;
}

}  // namespace

bool is_prime(std::uint32_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

bool prime_power(std::uint32_t q, std::uint32_t& p, std::uint32_t& k) {
    if (q < 2) {
        return false;
    }
    std::uint32_t smallest = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            smallest = static_cast<std::uint32_t>(d);
            break;
        }
    }
    std::uint32_t rest = q;
    std::uint32_t exponent = 0;
    while (rest % smallest == 0) {
        rest /= smallest;
        ++exponent;
    }
    if (rest != 1) {
        return false;
    }
    p = smallest;
    k = exponent;
    return true;
}

bool has_no_roots(const std::vector<std::uint32_t>& monic, std::uint32_t p) {
    for (std::uint32_t x = 0; x < p; ++x) {
        std::uint64_t acc = 0;
        for (std::size_t i = monic.size(); i-- > 0;) {
            acc = (acc * x + monic[i]) % p;
        }
        if (acc == 0) {
            return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> first_rootless_monic(std::uint32_t p, std::uint32_t degree) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < degree; ++i) {
        count *= p;
    }
    for (std::uint64_t index = 0; index < count; ++index) {
        std::vector<std::uint32_t> poly(degree + 1, 0);
        std::uint64_t rest = index;
        for (std::uint32_t i = 0; i < degree; ++i) {
            poly[i] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        poly[degree] = 1;
        if (has_no_roots(poly, p)) {
            return poly;
        }
    }
    throw Error(ErrorKind::UnsupportedDegree, "no rootless monic polynomial found");
}

Field::Field(std::uint32_t q) {
    if (!prime_power(q, p_, k_)) {
        throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
    }
    if (k_ > kMaxDegree) {
        throw Error(ErrorKind::UnsupportedDegree,
                    "GF(" + std::to_string(q) + ") has extension degree " + std::to_string(k_) +
                        " > " + std::to_string(kMaxDegree));
    }
    q_ = q;

    if (k_ == 1) {
        modulus_ = {0, 1};
    } else {
        for (const auto& entry : pinned_moduli()) {
            if (entry.p == p_ && entry.k == k_) {
                modulus_ = entry.coeffs;
            }
        }
        if (modulus_.empty()) {
            modulus_ = first_rootless_monic(p_, k_);
        }
        // degree <= 3: no roots <=> irreducible
        if (!has_no_roots(modulus_, p_)) {
            throw Error(ErrorKind::InvalidParams, "reduction polynomial is reducible");
        }
    }

    if (q_ <= kTableLimit) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        mul_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                add_table_[a * q_ + b] = slow_add(a, b);
                mul_table_[a * q_ + b] = slow_mul(a, b);
            }
        }
    }
}

std::uint32_t Field::slow_add(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % p_);
    }
    auto da = to_digits(a, p_, k_);
    auto db = to_digits(b, p_, k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
        da[i] = (da[i] + db[i]) % p_;
    }
    return from_digits(da, p_);
}

std::uint32_t Field::slow_mul(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    const auto da = to_digits(a, p_, k_);
    const auto db = to_digits(b, p_, k_);
    std::vector<std::uint32_t> prod(2 * k_ - 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
        for (std::uint32_t j = 0; j < k_; ++j) {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        }
    }
    // Reduce from the top: x^k = -(m_0 + ... + m_{k-1} x^{k-1}).
    for (std::size_t top = prod.size(); top-- > k_;) {
        const std::uint32_t c = prod[top];
        if (c == 0) {
            continue;
        }
        prod[top] = 0;
        const std::size_t shift = top - k_;
        for (std::uint32_t i = 0; i < k_; ++i) {
            const std::uint32_t sub = (c * modulus_[i]) % p_;
            prod[shift + i] = (prod[shift + i] + p_ - sub) % p_;
        }
    }
    prod.resize(k_);
    return from_digits(prod, p_);
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
    if (!add_table_.empty()) {
        return {add_table_[a.code * q_ + b.code]};
    }
    return {slow_add(a.code, b.code)};
}

FieldElement Field::neg(FieldElement a) const {
    auto digits = to_digits(a.code, p_, k_);
    for (auto& d : digits) {
        d = (p_ - d) % p_;
    }
    return {from_digits(digits, p_)};
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
    if (!mul_table_.empty()) {
        return {mul_table_[a.code * q_ + b.code]};
    }
    return {slow_mul(a.code, b.code)};
}

FieldElement Field::pow(FieldElement a, std::uint64_t e) const {
    FieldElement result{1};
    FieldElement base = a;
    while (e > 0) {
        if (e & 1U) {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1U;
    }
    return result;
}

FieldElement Field::eval(const FieldPoly& poly, FieldElement x) const {
    FieldElement acc{0};
    for (std::size_t i = poly.coeffs.size(); i-- > 0;) {
        acc = add(mul(acc, x), poly.coeffs[i]);
    }
    return acc;
}

std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) {
        out[i] = FieldElement{i};
    }
    return out;
}

FieldPoly Field::poly_from_index(std::uint64_t index, std::size_t n_coeffs) const {
    FieldPoly poly;
    poly.coeffs.resize(n_coeffs);
    for (std::size_t i = 0; i < n_coeffs; ++i) {
        poly.coeffs[i] = FieldElement{static_cast<std::uint32_t>(index % q_)};
        index /= q_;
    }
    return poly;
}

}  // namespace kronbeam::gf
