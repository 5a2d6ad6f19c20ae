#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "whitsel/errors.hpp"
#include "whitsel/smoother.hpp"
#include "whitsel/spectral.hpp"

namespace whitsel {

/// Log-uniform grid of candidate regularization values: 10^u with u evenly
/// spaced over [decades_min, decades_max].
struct LambdaGrid {
    std::vector<double> values;
    double decades_min = 0.0;
    double decades_max = 0.0;
    std::size_t points_per_decade = 0;

    std::size_t size() const noexcept { return values.size(); }
};

inline LambdaGrid lambda_grid(double decades_min, double decades_max,
                              std::size_t points_per_decade) {
    if (!(decades_min < decades_max)) {
        throw InvalidRange("lambda grid needs decades_min < decades_max");
    }
    if (points_per_decade < 1) {
        throw InvalidRange("lambda grid needs points_per_decade >= 1");
    }
    LambdaGrid g;
    g.decades_min = decades_min;
    g.decades_max = decades_max;
    g.points_per_decade = points_per_decade;
    const double span = decades_max - decades_min;
    const auto count =
        static_cast<std::size_t>(std::llround(span * static_cast<double>(points_per_decade))) + 1;
    g.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = decades_min + span * static_cast<double>(i) /
                                           static_cast<double>(count - 1);
        g.values[i] = std::pow(10.0, u);
    }
    return g;
}

/// Grid used when nothing else is requested: 10^-2 .. 10^8, 10 points/decade.
inline LambdaGrid default_lambda_grid() { return lambda_grid(-2.0, 8.0, 10); }

enum class SelectMethod { Cv, Vcurve, Scurve };

/**
 * Everything a selection run produces: the per-lambda curve it minimized or
 * maximized, the underlying trade-off points, which grid points were dropped
 * as degenerate, and the decision.
 *
 * curve_x holds lambda itself for Cv and the geometric mean of each adjacent
 * usable pair for Vcurve/Scurve. chosen_index is a grid index — for the
 * distance-based methods it names the left member of the winning pair, which
 * is the quantity that is invariant under rescaling the input.
 */
struct SelectionDiagnostics {
    SelectMethod method = SelectMethod::Cv;
    LambdaGrid grid;
    std::vector<double> curve_x;
    std::vector<double> curve_y;
    std::vector<std::array<double, 2>> aux;  ///< (log R, log S) or (log H_S, log H_shat)
    std::vector<std::size_t> aux_index;      ///< grid index of each aux point
    std::vector<std::size_t> dropped;        ///< grid indices dropped as degenerate
    double chosen_lambda = 0.0;
    std::size_t chosen_index = 0;
};

struct CvOptions {
    HatMethod hat = HatMethod::Auto;  ///< Auto: exact for n <= 2000, rescale above
    std::size_t probes = 64;          ///< StochasticProbe only
    std::uint64_t seed = 1;           ///< StochasticProbe only
};

/**
 * Leave-one-out cross-validation curve over the grid. Withholding a point is
 * realized by zeroing its weight, which makes the identity
 *   y_i - yhat_(-i) = (y_i - yhat_i) / (1 - h_ii)
 * exact, so one smoothing pass plus the hat diagonal replaces m re-fits:
 *   sigma_cv = sqrt( sum_observed ((y_i - yhat_i)/(1 - h_ii))^2 / m ).
 * Selection is the sigma_cv minimum, ties toward smaller lambda.
 */
inline SelectionDiagnostics cv_curve(const Signal& signal, const LambdaGrid& grid, int order,
                                     const CvOptions& options = {}) {
    const std::size_t n = signal.size();
    HatMethod method = options.hat;
    if (method == HatMethod::Auto) {
        method = n <= 2000 ? HatMethod::Exact : HatMethod::SmallProblemRescale;
    }
    SelectionDiagnostics diag;
    diag.method = SelectMethod::Cv;
    diag.grid = grid;
    diag.curve_x = grid.values;
    diag.curve_y.resize(grid.size());
    const double m = static_cast<double>(signal.observed_count());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double lambda = grid.values[gi];
        detail::check_smoothable(signal, lambda, order);
        const auto fp = detail::factor_normal_equations(signal, lambda, order);
        const SmoothResult fit = detail::smooth_with_factor(signal, lambda, order, fp);
        std::vector<double> h;
        if (method == HatMethod::Exact) {
            h = fp.factor.inverse_diagonal();
            for (std::size_t i = 0; i < n; ++i) h[i] *= signal.w[i];
        } else {
            h = hat_diagonal_estimate(signal, lambda, order, method, options.probes,
                                      options.seed);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(signal.w[i] > 0.0)) continue;
            const double denom = 1.0 - h[i];
            if (denom < 1e-12) {
                throw DegenerateHat("1 - h_ii below 1e-12 at index " + std::to_string(i) +
                                    ", lambda " + std::to_string(lambda));
            }
            const double r = fit.residuals[i] / denom;
            acc += r * r;
        }
        diag.curve_y[gi] = std::sqrt(acc / m);
    }
    std::size_t best = 0;
    for (std::size_t gi = 1; gi < grid.size(); ++gi) {
        if (diag.curve_y[gi] < diag.curve_y[best]) best = gi;
    }
    diag.chosen_index = best;
    diag.chosen_lambda = grid.values[best];
    return diag;
}

/// A trade-off curve restricted to its usable grid points.
struct CurvePoints {
    std::vector<std::array<double, 2>> points;
    std::vector<std::size_t> kept;     ///< grid index of each point
    std::vector<std::size_t> dropped;  ///< grid indices that failed the positivity guard
};

/**
 * L-curve points (ln R, ln S) per grid lambda. Grid points where either
 * metric underflows 1e-300 carry no usable logarithm and are dropped and
 * recorded; fewer than 3 survivors is an error.
 */
inline CurvePoints lv_points(const Signal& signal, const LambdaGrid& grid, int order) {
    CurvePoints out;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const SmoothResult fit = whittaker_smooth(signal, grid.values[gi], order);
        const FitMetrics fm = fit_metrics(signal, fit);
        if (!(fm.R > 1e-300) || !(fm.S > 1e-300)) {
            out.dropped.push_back(gi);
            continue;
        }
        out.points.push_back({std::log(fm.R), std::log(fm.S)});
        out.kept.push_back(gi);
    }
    if (out.points.size() < 3) {
        throw AllPointsDegenerate("L-curve has " + std::to_string(out.points.size()) +
                                  " usable points; need at least 3");
    }
    return out;
}

/**
 * S-curve points (ln H_S, ln H_shat) per grid lambda: H_S is the spectral
 * entropy of the residual series (gaps contribute zero residual) and H_shat
 * the spectral entropy of the order-d differences of the smooth. Points with
 * either entropy at or below 1e-12 are dropped and recorded.
 *
 * compact_gap_residuals switches the residual series to only the observed
 * entries instead of zero-filling gaps; the default matches the smoother's
 * residual convention.
 */
inline CurvePoints scurve_points(const Signal& signal, const LambdaGrid& grid, int order,
                                 bool compact_gap_residuals = false) {
    CurvePoints out;
    const DifferenceOperator op(order, signal.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const SmoothResult fit = whittaker_smooth(signal, grid.values[gi], order);
        std::vector<double> residual_series;
        if (compact_gap_residuals) {
            for (std::size_t i = 0; i < signal.size(); ++i) {
                if (signal.w[i] > 0.0) residual_series.push_back(fit.residuals[i]);
            }
        } else {
            residual_series = fit.residuals;
        }
        const SpectralEntropy hs = spectral_entropy(residual_series);
        const SpectralEntropy hy = spectral_entropy(difference_apply(op, fit.s_hat));
        if (!(hs.value > 1e-12) || !(hy.value > 1e-12)) {
            out.dropped.push_back(gi);
            continue;
        }
        out.points.push_back({std::log(hs.value), std::log(hy.value)});
        out.kept.push_back(gi);
    }
    if (out.points.size() < 3) {
        throw AllPointsDegenerate("S-curve has " + std::to_string(out.points.size()) +
                                  " usable points; need at least 3");
    }
    return out;
}

namespace detail {

/// Distances between consecutive usable points against the geometric mean of
/// their lambdas; extremum picked with ties toward smaller lambda.
inline SelectionDiagnostics select_from_points(const CurvePoints& cp, const LambdaGrid& grid,
                                               SelectMethod method, bool pick_max) {
    SelectionDiagnostics diag;
    diag.method = method;
    diag.grid = grid;
    diag.aux = cp.points;
    diag.aux_index = cp.kept;
    diag.dropped = cp.dropped;
    const std::size_t segments = cp.points.size() - 1;
    diag.curve_x.resize(segments);
    diag.curve_y.resize(segments);
    for (std::size_t i = 0; i < segments; ++i) {
        const double dx = cp.points[i + 1][0] - cp.points[i][0];
        const double dy = cp.points[i + 1][1] - cp.points[i][1];
        diag.curve_x[i] = std::sqrt(grid.values[cp.kept[i]] * grid.values[cp.kept[i + 1]]);
        diag.curve_y[i] = std::hypot(dx, dy);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < segments; ++i) {
        const bool better = pick_max ? diag.curve_y[i] > diag.curve_y[best]
                                     : diag.curve_y[i] < diag.curve_y[best];
        if (better) best = i;
    }
    diag.chosen_index = cp.kept[best];
    diag.chosen_lambda = diag.curve_x[best];
    return diag;
}

} // namespace detail

/// V-curve selection: minimum consecutive-point distance along the L-curve.
inline SelectionDiagnostics select_vcurve(const Signal& signal, const LambdaGrid& grid,
                                          int order) {
    return detail::select_from_points(lv_points(signal, grid, order), grid, SelectMethod::Vcurve,
                                      /*pick_max=*/false);
}

/// S-curve selection: absolute maximum consecutive-point distance along the
/// entropy trade-off curve.
inline SelectionDiagnostics select_scurve(const Signal& signal, const LambdaGrid& grid, int order,
                                          bool compact_gap_residuals = false) {
    return detail::select_from_points(scurve_points(signal, grid, order, compact_gap_residuals),
                                      grid, SelectMethod::Scurve, /*pick_max=*/true);
}

} // namespace whitsel
