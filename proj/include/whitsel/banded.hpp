#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "whitsel/errors.hpp"

namespace whitsel {

/**
 * Symmetric banded matrix, lower bands only.
 *
 * Storage is band-major: band k (k = 0 is the main diagonal, k = 1 the
 * first sub-diagonal, ...) occupies one contiguous run of length n, and
 * entry (k, j) holds A(j+k, j). Slots with j+k >= n fall outside the
 * matrix and stay zero. Total storage is exactly (bandwidth+1)*n.
 */
template <std::floating_point T>
class BandedSymMatrix {
public:
    BandedSymMatrix(std::size_t n, std::size_t bandwidth)
        : n_(n), bandwidth_(bandwidth), bands_((bandwidth + 1) * n, T(0)) {
        if (n == 0 || bandwidth >= n) {
            throw DimensionMismatch("BandedSymMatrix: bandwidth must be < n and n > 0");
        }
    }

    std::size_t dim() const noexcept { return n_; }
    std::size_t bandwidth() const noexcept { return bandwidth_; }

    /// Entry A(j+k, j) of band k; k <= bandwidth, j+k < n.
    T& band(std::size_t k, std::size_t j) { return bands_[k * n_ + j]; }
    T band(std::size_t k, std::size_t j) const { return bands_[k * n_ + j]; }

    std::span<const T> storage() const noexcept { return bands_; }

    /// Full symmetric entry A(i, j); zero outside the band.
    T at(std::size_t i, std::size_t j) const {
        const std::size_t lo = i < j ? i : j;
        const std::size_t hi = i < j ? j : i;
        if (hi - lo > bandwidth_) return T(0);
        return bands_[(hi - lo) * n_ + lo];
    }

    /// y = A x, using the symmetric structure.
    std::vector<T> matvec(std::span<const T> x) const {
        if (x.size() != n_) {
            throw DimensionMismatch("matvec: vector length " + std::to_string(x.size()) +
                                    " != matrix dimension " + std::to_string(n_));
        }
        std::vector<T> y(n_, T(0));
        for (std::size_t j = 0; j < n_; ++j) {
            y[j] += bands_[j] * x[j];
            const std::size_t kmax = std::min(bandwidth_, n_ - 1 - j);
            for (std::size_t k = 1; k <= kmax; ++k) {
                const T a = bands_[k * n_ + j];
                y[j + k] += a * x[j];
                y[j] += a * x[j + k];
            }
        }
        return y;
    }

private:
    std::size_t n_;
    std::size_t bandwidth_;
    std::vector<T> bands_;
};

/**
 * Cholesky factor L (A = L L^T) of a banded SPD matrix, same band
 * layout as the input. Factor once, solve many right-hand sides.
 */
template <std::floating_point T>
class BandedCholesky {
public:
    explicit BandedCholesky(const BandedSymMatrix<T>& a)
        : n_(a.dim()), bandwidth_(a.bandwidth()), low_(a) {
        const std::size_t m = bandwidth_;
        for (std::size_t j = 0; j < n_; ++j) {
            const std::size_t k0 = j > m ? j - m : 0;
            T d = low_.band(0, j);
            for (std::size_t k = k0; k < j; ++k) {
                const T ljk = low_.band(j - k, k);
                d -= ljk * ljk;
            }
            if (!(d > T(0))) {
                throw NotPositiveDefinite("pivot " + std::to_string(d) + " at index " +
                                          std::to_string(j));
            }
            const T ljj = std::sqrt(d);
            low_.band(0, j) = ljj;
            const std::size_t imax = std::min(n_ - 1, j + m);
            for (std::size_t i = j + 1; i <= imax; ++i) {
                T v = low_.band(i - j, j);
                const std::size_t kk0 = i > m ? i - m : 0;
                const std::size_t kstart = kk0 > k0 ? kk0 : k0;
                for (std::size_t k = kstart; k < j; ++k) {
                    v -= low_.band(i - k, k) * low_.band(j - k, k);
                }
                low_.band(i - j, j) = v / ljj;
            }
        }
    }

    std::size_t dim() const noexcept { return n_; }

    /// x with (L L^T) x = b.
    std::vector<T> solve(std::span<const T> b) const {
        if (b.size() != n_) {
            throw DimensionMismatch("solve: rhs length " + std::to_string(b.size()) +
                                    " != dimension " + std::to_string(n_));
        }
        const std::size_t m = bandwidth_;
        std::vector<T> x(n_);
        for (std::size_t i = 0; i < n_; ++i) {  // L y = b
            T s = b[i];
            const std::size_t k0 = i > m ? i - m : 0;
            for (std::size_t k = k0; k < i; ++k) s -= low_.band(i - k, k) * x[k];
            x[i] = s / low_.band(0, i);
        }
        for (std::size_t ii = n_; ii-- > 0;) {  // L^T x = y
            T s = x[ii];
            const std::size_t jmax = std::min(n_ - 1, ii + m);
            for (std::size_t j = ii + 1; j <= jmax; ++j) s -= low_.band(j - ii, ii) * x[j];
            x[ii] = s / low_.band(0, ii);
        }
        return x;
    }

    /**
     * Diagonal of A^{-1} by the band-inverse (Takahashi) recursion:
     * with A = L~ D L~^T, the band of Z = A^{-1} satisfies, for i <= j,
     *   Z(i,j) = [i==j]/d_i - sum_{k=i+1..i+m} L~(k,i) Z(k,j),
     * which closes over the band when columns are swept right to left.
     * O(n * bandwidth^2) total.
     */
    std::vector<T> inverse_diagonal() const {
        const std::size_t m = bandwidth_;
        // z.band(k, j) stores Z(j+k, j); unit-lower factor entries are
        // L(i,j)/L(j,j) and d_j = L(j,j)^2.
        BandedSymMatrix<T> z(n_, m);
        auto zfetch = [&](std::size_t r, std::size_t c) -> T& {
            return r >= c ? z.band(r - c, c) : z.band(c - r, r);
        };
        for (std::size_t jj = n_; jj-- > 0;) {
            const std::size_t ilow = jj > m ? jj - m : 0;
            for (std::size_t i = jj + 1; i-- > ilow;) {
                const T lii = low_.band(0, i);
                T acc = (i == jj) ? T(1) / (lii * lii) : T(0);
                const std::size_t kmax = std::min(n_ - 1, i + m);
                for (std::size_t k = i + 1; k <= kmax; ++k) {
                    const T lki = low_.band(k - i, i) / lii;
                    acc -= lki * zfetch(k, jj);
                }
                zfetch(i, jj) = acc;
            }
        }
        std::vector<T> diag(n_);
        for (std::size_t i = 0; i < n_; ++i) diag[i] = z.band(0, i);
        return diag;
    }

private:
    std::size_t n_;
    std::size_t bandwidth_;
    BandedSymMatrix<T> low_;
};

/**
 * Solve a x = b from an existing factorization with one step of
 * mixed-precision iterative refinement: the residual b - a x is accumulated
 * in extended precision before the correction solve. A plain factored solve
 * carries forward error that grows like cond(a) * eps — around 1e-10 already
 * for the stiff systems a high-lambda penalty produces — and the refined
 * solve pulls that down to near roundoff for one extra multiply and solve.
 */
template <std::floating_point T>
std::vector<T> refined_solve(const BandedSymMatrix<T>& a, const BandedCholesky<T>& factor,
                             std::type_identity_t<std::span<const T>> b) {
    if (factor.dim() != a.dim()) {
        throw DimensionMismatch("refined_solve: factor dimension " +
                                std::to_string(factor.dim()) + " != matrix dimension " +
                                std::to_string(a.dim()));
    }
    std::vector<T> x = factor.solve(b);
    const std::size_t n = a.dim();
    const std::size_t m = a.bandwidth();
    std::vector<long double> acc(n);
    for (std::size_t i = 0; i < n; ++i) acc[i] = static_cast<long double>(b[i]);
    for (std::size_t j = 0; j < n; ++j) {
        acc[j] -= static_cast<long double>(a.band(0, j)) * static_cast<long double>(x[j]);
        const std::size_t kmax = std::min(m, n - 1 - j);
        for (std::size_t k = 1; k <= kmax; ++k) {
            const long double v = static_cast<long double>(a.band(k, j));
            acc[j + k] -= v * static_cast<long double>(x[j]);
            acc[j] -= v * static_cast<long double>(x[j + k]);
        }
    }
    std::vector<T> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<T>(acc[i]);
    const std::vector<T> dx = factor.solve(r);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    return x;
}

/// One-shot factor-and-solve of a x = b for SPD banded a, with refinement.
/// The rhs type is non-deduced so vectors and arrays convert to the span.
template <std::floating_point T>
std::vector<T> banded_cholesky_solve(const BandedSymMatrix<T>& a,
                                     std::type_identity_t<std::span<const T>> b) {
    return refined_solve(a, BandedCholesky<T>(a), b);
}

namespace detail {

/// Alternating-sign binomial stencil of the order-d forward difference:
/// coefficient k is (-1)^(d-k) * C(d, k).
inline std::vector<double> difference_stencil(int order) {
    if (order < 1 || order > 3) {
        throw InvalidOrder("difference order must be 1, 2 or 3, got " + std::to_string(order));
    }
    std::vector<double> c(static_cast<std::size_t>(order) + 1);
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        const int sign = ((order - k) % 2 == 0) ? 1 : -1;
        c[static_cast<std::size_t>(k)] = sign * binom;
        binom = binom * (order - k) / (k + 1);
    }
    return c;
}

} // namespace detail

/**
 * Normal-equation matrix of the penalized least-squares smoother:
 * diag(weights) + lambda * D^T D with D the order-d difference matrix.
 * Bandwidth equals the order.
 */
template <std::floating_point T>
BandedSymMatrix<T> banded_from_penalty(std::size_t n, int order, T lambda,
                                       std::type_identity_t<std::span<const T>> weights) {
    const auto c = detail::difference_stencil(order);
    const std::size_t d = static_cast<std::size_t>(order);
    if (n < d + 1) {
        throw DimensionMismatch("banded_from_penalty: need n >= order + 1");
    }
    if (weights.size() != n) {
        throw DimensionMismatch("banded_from_penalty: weights length " +
                                std::to_string(weights.size()) + " != n " + std::to_string(n));
    }
    BandedSymMatrix<T> w(n, d);
    // Accumulate D^T D row by row of D: row r touches columns r..r+d. The
    // stencil products are small integers, so these sums are exact; scaling
    // by lambda afterwards leaves every entry correctly rounded.
    for (std::size_t r = 0; r + d < n; ++r) {
        for (std::size_t a = 0; a <= d; ++a) {
            for (std::size_t b = a; b <= d; ++b) {
                w.band(b - a, r + a) += static_cast<T>(c[b] * c[a]);
            }
        }
    }
    for (std::size_t k = 0; k <= d; ++k) {
        for (std::size_t j = 0; j + k < n; ++j) w.band(k, j) *= lambda;
    }
    for (std::size_t i = 0; i < n; ++i) w.band(0, i) += weights[i];
    return w;
}

} // namespace whitsel
