#pragma once

// Independent reference implementations used to derive expected values.
// Everything here is deliberately naive — dense matrices, Gaussian
// elimination, O(n^2) DFT summation, literal re-smoothing leave-one-out —
// and shares no code with the library under test.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<double>>;

inline Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<double>(c, 0.0)); }

/// Order-d difference matrix, rows (n-d) x n, stencils written out literally.
inline Mat dense_difference(int order, std::size_t n) {
    std::vector<double> stencil;
    if (order == 1) stencil = {-1.0, 1.0};
    else if (order == 2) stencil = {1.0, -2.0, 1.0};
    else if (order == 3) stencil = {-1.0, 3.0, -3.0, 1.0};
    else throw std::invalid_argument("oracle: order must be 1..3");
    const std::size_t d = stencil.size() - 1;
    Mat dm = zeros(n - d, n);
    for (std::size_t r = 0; r + d < n; ++r) {
        for (std::size_t k = 0; k <= d; ++k) dm[r][r + k] = stencil[k];
    }
    return dm;
}

/// diag(w) + lambda * D^T D by explicit matrix multiplication.
inline Mat dense_penalty(std::size_t n, int order, double lambda,
                         const std::vector<double>& w) {
    const Mat dm = dense_difference(order, n);
    Mat a = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < dm.size(); ++r) acc += dm[r][i] * dm[r][j];
            a[i][j] = lambda * acc;
        }
        a[i][i] += w[i];
    }
    return a;
}

/// Gaussian elimination with partial pivoting, run in extended precision so
/// the reference solution's own rounding error stays orders of magnitude
/// below the tolerances it is used to check, even on ill-conditioned
/// high-lambda systems where a plain double solve drifts near 1e-10.
inline std::vector<double> gauss_solve(const Mat& a_in, const std::vector<double>& b_in) {
    const std::size_t n = b_in.size();
    std::vector<std::vector<long double>> a(n, std::vector<long double>(n));
    std::vector<long double> b(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] = a_in[r][c];
        b[r] = b_in[r];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (a[piv][col] == 0.0L) throw std::runtime_error("oracle: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const long double f = a[r][col] / a[col][col];
            if (f == 0.0L) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    std::vector<long double> xl(n);
    for (std::size_t ri = n; ri-- > 0;) {
        long double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri][c] * xl[c];
        xl[ri] = s / a[ri][ri];
        x[ri] = static_cast<double>(xl[ri]);
    }
    return x;
}

/// Column-by-column inverse via gauss_solve.
inline Mat gauss_inverse(const Mat& a) {
    const std::size_t n = a.size();
    Mat inv = zeros(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> e(n, 0.0);
        e[c] = 1.0;
        const auto col = gauss_solve(a, e);
        for (std::size_t r = 0; r < n; ++r) inv[r][c] = col[r];
    }
    return inv;
}

/// Penalized least squares through the dense normal equations.
inline std::vector<double> dense_smooth(const std::vector<double>& y,
                                        const std::vector<double>& w, double lambda, int order) {
    const std::size_t n = y.size();
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = w[i] * y[i];
    return gauss_solve(dense_penalty(n, order, lambda, w), rhs);
}

/// diag((diag(w) + lambda D^T D)^{-1} diag(w)) by full dense inversion.
inline std::vector<double> dense_hat_diagonal(const std::vector<double>& w, double lambda,
                                              int order) {
    const Mat inv = gauss_inverse(dense_penalty(w.size(), order, lambda, w));
    std::vector<double> h(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) h[i] = inv[i][i] * w[i];
    return h;
}

/// Literal leave-one-out: zero each observed weight in turn, re-smooth with
/// the dense solver, predict the withheld point.
inline double brute_force_loo_sigma(const std::vector<double>& y, const std::vector<double>& w,
                                    double lambda, int order) {
    double acc = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(w[i] > 0.0)) continue;
        std::vector<double> w_held = w;
        w_held[i] = 0.0;
        const auto fit = dense_smooth(y, w_held, lambda, order);
        const double d = y[i] - fit[i];
        acc += d * d;
        ++m;
    }
    return std::sqrt(acc / static_cast<double>(m));
}

/// O(n^2) DFT summation.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    const double two_pi = 8.0 * std::atan(1.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -two_pi * static_cast<double>(k) * static_cast<double>(j) /
                               static_cast<double>(n);
            acc += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

/// One-sided normalized power spectrum on top of the naive DFT, same
/// conventions as the library contract (bins 0..n/2, sum 1, 1e-300*n floor).
inline std::vector<double> naive_power_spectrum(const std::vector<double>& x) {
    const auto spec = naive_dft(x);
    std::vector<double> bins(x.size() / 2 + 1);
    double total = 0.0;
    for (std::size_t q = 0; q < bins.size(); ++q) {
        bins[q] = std::norm(spec[q]);
        total += bins[q];
    }
    if (total <= 1e-300 * static_cast<double>(x.size())) {
        return std::vector<double>(bins.size(), 0.0);
    }
    for (double& b : bins) b /= total;
    return bins;
}

inline double naive_spectral_entropy(const std::vector<double>& x) {
    double h = 0.0;
    for (double f : naive_power_spectrum(x)) {
        if (f > 0.0) h -= f * std::log(f);
    }
    return h;
}

/// Least-squares polynomial of the given degree (0..2) on abscissa xs,
/// returned as fitted values; normal equations solved densely.
inline std::vector<double> poly_lsq_fit(const std::vector<double>& xs,
                                        const std::vector<double>& y, int degree) {
    const std::size_t n = y.size();
    const std::size_t p = static_cast<std::size_t>(degree) + 1;
    Mat vandermonde = zeros(n, p);
    for (std::size_t i = 0; i < n; ++i) {
        double v = 1.0;
        for (std::size_t j = 0; j < p; ++j) {
            vandermonde[i][j] = v;
            v *= xs[i];
        }
    }
    Mat gram = zeros(p, p);
    std::vector<double> rhs(p, 0.0);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += vandermonde[i][a] * vandermonde[i][b];
            gram[a][b] = acc;
        }
        for (std::size_t i = 0; i < n; ++i) rhs[a] += vandermonde[i][a] * y[i];
    }
    const auto coef = gauss_solve(gram, rhs);
    std::vector<double> fit(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) fit[i] += coef[j] * vandermonde[i][j];
    }
    return fit;
}

} // namespace oracle
