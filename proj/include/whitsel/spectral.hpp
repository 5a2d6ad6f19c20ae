#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "whitsel/errors.hpp"

namespace whitsel {

namespace detail {

/// In-place radix-2 Cooley-Tukey; a.size() must be a power of two.
/// One twiddle table of size n/2 serves every stage via stride indexing.
inline void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {  // bit-reversal permutation
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    std::vector<std::complex<double>> tw(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(n);
        tw[j] = {std::cos(ang), std::sin(ang)};
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * tw[j * stride];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

/// Discrete Fourier transform of arbitrary length via Bluestein's chirp-z
/// reduction to a power-of-two cyclic convolution. The chirp phase uses
/// j^2 mod 2n in integer arithmetic so large indices lose no precision.
inline std::vector<std::complex<double>> dft(std::span<const double> x) {
    const std::size_t n = x.size();
    if (std::has_single_bit(n)) {
        std::vector<std::complex<double>> a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = x[i];
        fft_pow2(a, false);
        return a;
    }
    const std::size_t m = std::bit_ceil(2 * n - 1);
    std::vector<std::complex<double>> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const unsigned long long q = (static_cast<unsigned long long>(j) * j) % (2ull * n);
        const double ang = -std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
        chirp[j] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> a(m), b(m);
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp[j]);
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t j = 0; j < m; ++j) a[j] *= b[j];
    fft_pow2(a, true);
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    return out;
}

} // namespace detail

/**
 * One-sided squared-magnitude spectrum over q = 0..floor(n/2), normalized to
 * sum 1. total_power keeps the pre-normalization sum; when it underflows the
 * floor 1e-300*n the bins stay all-zero and the spectrum is flagged
 * degenerate (entropy of such a spectrum is defined as 0 downstream).
 */
struct PowerSpectrum {
    std::vector<double> bins;
    double total_power = 0.0;
    bool degenerate = false;
};

/// Shannon entropy of a normalized power spectrum, in nats.
struct SpectralEntropy {
    double value = 0.0;
    bool degenerate = false;
};

inline PowerSpectrum power_spectrum(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 4) {
        throw DimensionMismatch("power_spectrum needs length >= 4, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i])) {
            throw NonFiniteInput("power_spectrum: x[" + std::to_string(i) + "] is not finite");
        }
    }
    const auto spec = detail::dft(x);
    PowerSpectrum ps;
    ps.bins.resize(n / 2 + 1, 0.0);
    double total = 0.0;
    for (std::size_t q = 0; q < ps.bins.size(); ++q) {
        const double p = std::norm(spec[q]);
        ps.bins[q] = p;
        total += p;
    }
    ps.total_power = total;
    if (total <= 1e-300 * static_cast<double>(n)) {
        ps.bins.assign(ps.bins.size(), 0.0);
        ps.degenerate = true;
        return ps;
    }
    for (double& b : ps.bins) b /= total;
    return ps;
}

/// H = -sum F(q) log F(q) with 0*log 0 = 0; degenerate spectra yield 0.
inline SpectralEntropy spectral_entropy(std::span<const double> x) {
    const PowerSpectrum ps = power_spectrum(x);
    SpectralEntropy h;
    h.degenerate = ps.degenerate;
    if (ps.degenerate) return h;
    double acc = 0.0;
    for (double f : ps.bins) {
        if (f > 0.0) acc -= f * std::log(f);
    }
    h.value = acc;
    return h;
}

} // namespace whitsel
