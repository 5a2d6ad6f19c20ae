#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace whitsel {

/**
 * Deterministic random source for noise generation and stochastic probes.
 *
 * Wraps mt19937_64 with fixed output mappings so that a given seed yields
 * the same stream on every platform; std::normal_distribution is avoided
 * because the standard does not pin its algorithm.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on (0, 1]: 53-bit mantissa, never 0 so log() is safe.
    double uniform() {
        return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; no cached spare, one value per call,
    /// so the stream position is a pure function of the call count.
    double gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// +1 or -1 with equal probability (top output bit).
    double rademacher() { return (eng_() >> 63) ? 1.0 : -1.0; }

private:
    std::mt19937_64 eng_;
};

} // namespace whitsel
