#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "whitsel/errors.hpp"

namespace whitsel {

/**
 * A sampled series: positions t, observed values y, observation weights w.
 *
 * Weights live in [0, 1]; w = 0 marks a missing observation (gap) whose y
 * entry is a placeholder. The smoother is index-based — t is carried for
 * I/O and plotting and is required only to be strictly increasing.
 */
struct Signal {
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> w;

    std::size_t size() const noexcept { return y.size(); }

    /// Count of observed (w > 0) samples.
    std::size_t observed_count() const noexcept {
        std::size_t m = 0;
        for (double wi : w) m += (wi > 0.0);
        return m;
    }

    /// Uniform-weight signal with t = 0..n-1.
    static Signal from_values(std::vector<double> values) {
        Signal s;
        const std::size_t n = values.size();
        s.y = std::move(values);
        s.w.assign(n, 1.0);
        s.t.resize(n);
        for (std::size_t i = 0; i < n; ++i) s.t[i] = static_cast<double>(i);
        return s;
    }
};

/**
 * Enforce the Signal invariants: equal lengths, n >= 4, strictly increasing
 * finite t, weights in [0, 1], finite y wherever w > 0.
 */
inline void validate(const Signal& s) {
    const std::size_t n = s.y.size();
    if (s.t.size() != n || s.w.size() != n) {
        throw DimensionMismatch("signal arrays t/y/w must have equal length");
    }
    if (n < 4) {
        throw DimensionMismatch("signal needs at least 4 samples, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.t[i])) {
            throw NonFiniteInput("t[" + std::to_string(i) + "] is not finite");
        }
        if (i > 0 && !(s.t[i] > s.t[i - 1])) {
            throw InvalidArgument("t must be strictly increasing at index " + std::to_string(i));
        }
        if (!(s.w[i] >= 0.0) || !(s.w[i] <= 1.0)) {
            throw InvalidArgument("w[" + std::to_string(i) + "] outside [0, 1]");
        }
        if (s.w[i] > 0.0 && !std::isfinite(s.y[i])) {
            throw NonFiniteInput("y[" + std::to_string(i) + "] is not finite at an observed point");
        }
    }
}

} // namespace whitsel
