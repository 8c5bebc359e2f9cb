#ifndef KRONBEAM_RANDOM_HPP
#define KRONBEAM_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace kronbeam {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive hash of a seed path, e.g. (base_seed, snr_index, trial_index).
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = mix64(base);
    for (auto v : path) {
        h = mix64(h ^ mix64(v + 0x632be59bd9b4e019ULL));
    }
    return h;
}

/// Circularly-symmetric complex Gaussian with E|x|^2 = variance.
inline std::complex<double> complex_gaussian(Rng& rng, double variance) {
    if (variance <= 0.0) {
        return {0.0, 0.0};
    }
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

}  // namespace kronbeam

#endif
