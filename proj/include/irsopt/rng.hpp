// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace irsopt {

// splitmix64 finalizer; used to derive independent per-trial substreams
// from a single master seed so results do not depend on execution order.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 trial_stream(std::uint64_t master_seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(splitmix64(master_seed) ^ splitmix64(trial + 1)));
}

// Circularly-symmetric complex Gaussian, unit variance (0.5 per component).
inline std::complex<double> randn_c(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0 / std::sqrt(2.0));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

}  // namespace irsopt
