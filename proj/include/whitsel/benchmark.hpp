#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "whitsel/errors.hpp"
#include "whitsel/format.hpp"
#include "whitsel/rng.hpp"
#include "whitsel/selectors.hpp"
#include "whitsel/signal.hpp"
#include "whitsel/smoother.hpp"

namespace whitsel {

/// A noiseless analytic test function sampled on a uniform grid.
struct TruthSignal {
    std::string expression_id;
    std::vector<double> t;
    std::vector<double> s;
};

/**
 * Built-in test functions:
 *   sin        sin(t)
 *   beats      (log(t+1) + sin(t)*sin(3t)) / 2
 *   multitone  (sin(t) + sin(9t) + sin(17t) + sin(23t) + log(t+1)) / 4
 * The log-containing ones require t_min >= 0.
 */
inline TruthSignal synth_signal(const std::string& expression_id, std::size_t n, double t_min,
                                double t_max) {
    if (n < 2) {
        throw InvalidArgument("synth_signal needs n >= 2, got " + std::to_string(n));
    }
    if (!(t_min < t_max)) {
        throw InvalidRange("synth_signal needs t_min < t_max");
    }
    double (*f)(double) = nullptr;
    bool uses_log = false;
    if (expression_id == "sin") {
        f = [](double t) { return std::sin(t); };
    } else if (expression_id == "beats") {
        f = [](double t) { return 0.5 * (std::log(t + 1.0) + std::sin(t) * std::sin(3.0 * t)); };
        uses_log = true;
    } else if (expression_id == "multitone") {
        f = [](double t) {
            return 0.25 * (std::sin(t) + std::sin(9.0 * t) + std::sin(17.0 * t) +
                           std::sin(23.0 * t) + std::log(t + 1.0));
        };
        uses_log = true;
    } else {
        throw UnknownExpression("unknown expression '" + expression_id +
                                "' (available: sin, beats, multitone)");
    }
    if (uses_log && t_min < 0.0) {
        throw DomainError("expression '" + expression_id + "' needs t_min >= 0");
    }
    TruthSignal truth;
    truth.expression_id = expression_id;
    truth.t.resize(n);
    truth.s.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        truth.t[i] = t_min + (t_max - t_min) * static_cast<double>(i) /
                                 static_cast<double>(n - 1);
        truth.s[i] = f(truth.t[i]);
    }
    return truth;
}

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// y = s + sigma * g with i.i.d. standard-normal g drawn from the seed;
/// unit weights throughout.
inline Signal add_noise(const TruthSignal& truth, const NoiseSpec& spec) {
    if (!(spec.sigma >= 0.0)) {
        throw InvalidArgument("noise sigma must be >= 0");
    }
    Signal out;
    out.t = truth.t;
    out.y = truth.s;
    out.w.assign(truth.s.size(), 1.0);
    Rng rng(spec.seed);
    for (double& v : out.y) v += spec.sigma * rng.gaussian();
    return out;
}

/// Mean squared deviation from the truth.
inline double mse(const TruthSignal& truth, std::span<const double> estimate) {
    if (estimate.size() != truth.s.size()) {
        throw DimensionMismatch("mse: estimate length != truth length");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        const double d = truth.s[i] - estimate[i];
        acc += d * d;
    }
    return acc / static_cast<double>(estimate.size());
}

/// Sum of absolute deviations — the alternative error reading, kept behind
/// an explicit toggle. Argmin decisions may differ from mse.
inline double sum_abs_error(const TruthSignal& truth, std::span<const double> estimate) {
    if (estimate.size() != truth.s.size()) {
        throw DimensionMismatch("sum_abs_error: estimate length != truth length");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i) {
        acc += std::abs(truth.s[i] - estimate[i]);
    }
    return acc;
}

namespace detail {

inline double error_metric(const TruthSignal& truth, std::span<const double> estimate,
                           bool sum_abs) {
    return sum_abs ? sum_abs_error(truth, estimate) : mse(truth, estimate);
}

} // namespace detail

struct OptimalResult {
    double lambda_opt = 0.0;
    double err_opt = 0.0;
};

/// Oracle: sweep the grid, smooth at every lambda, return the error minimum
/// (ties toward smaller lambda). Requires the noiseless truth, so it exists
/// only inside simulations.
inline OptimalResult optimal_lambda(const TruthSignal& truth, const Signal& noisy,
                                    const LambdaGrid& grid, int order, bool sum_abs = false) {
    OptimalResult best;
    bool first = true;
    for (double lambda : grid.values) {
        const SmoothResult fit = whittaker_smooth(noisy, lambda, order);
        const double err = detail::error_metric(truth, fit.s_hat, sum_abs);
        if (first || err < best.err_opt) {
            best.lambda_opt = lambda;
            best.err_opt = err;
            first = false;
        }
    }
    return best;
}

struct MethodOutcome {
    double lambda_chosen = 0.0;
    double err_at_chosen = 0.0;
};

struct BenchmarkRecord {
    double sigma = 0.0;
    std::size_t trial = 0;
    bool ok = false;
    std::string error;  ///< failure reason when !ok
    double lambda_opt = 0.0;
    double err_opt = 0.0;
    MethodOutcome cv, vcurve, scurve;
};

struct BenchmarkConfig {
    std::string expression_id = "sin";
    std::size_t n = 1000;
    double t_min = 0.0;
    double t_max = 4.0 * std::numbers::pi;
    std::vector<double> sigmas{0.05, 0.1, 0.2, 0.35, 0.5};
    std::size_t trials = 20;
    LambdaGrid grid = default_lambda_grid();
    int order = 2;
    std::uint64_t base_seed = 42;
    bool sum_abs_metric = false;
};

struct BenchmarkReport {
    BenchmarkConfig config;
    std::vector<BenchmarkRecord> records;
};

/**
 * The simulation protocol: for each noise level and trial, corrupt the truth
 * with seeded Gaussian noise (seed = base_seed + trial), find the oracle
 * lambda, run all three selectors, and record each method's error at its
 * chosen lambda (re-smoothing at that exact value, which for the
 * distance-based methods lies between grid points). Failed trials carry
 * their error message and are skipped by aggregation, never fatal.
 */
inline BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
    BenchmarkReport report;
    report.config = config;
    const TruthSignal truth =
        synth_signal(config.expression_id, config.n, config.t_min, config.t_max);
    for (double sigma : config.sigmas) {
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            BenchmarkRecord rec;
            rec.sigma = sigma;
            rec.trial = trial;
            try {
                const Signal noisy =
                    add_noise(truth, {sigma, config.base_seed + static_cast<std::uint64_t>(trial)});
                const OptimalResult opt =
                    optimal_lambda(truth, noisy, config.grid, config.order,
                                   config.sum_abs_metric);
                rec.lambda_opt = opt.lambda_opt;
                rec.err_opt = opt.err_opt;
                auto evaluate = [&](double lambda) {
                    const SmoothResult fit = whittaker_smooth(noisy, lambda, config.order);
                    return detail::error_metric(truth, fit.s_hat, config.sum_abs_metric);
                };
                const auto cv = cv_curve(noisy, config.grid, config.order);
                rec.cv = {cv.chosen_lambda, evaluate(cv.chosen_lambda)};
                const auto vc = select_vcurve(noisy, config.grid, config.order);
                rec.vcurve = {vc.chosen_lambda, evaluate(vc.chosen_lambda)};
                const auto sc = select_scurve(noisy, config.grid, config.order);
                rec.scurve = {sc.chosen_lambda, evaluate(sc.chosen_lambda)};
                rec.ok = true;
            } catch (const Error& e) {
                rec.ok = false;
                rec.error = e.what();
            }
            report.records.push_back(std::move(rec));
        }
    }
    return report;
}

/// Median of a sample; even counts average the two central order statistics.
inline double median(std::vector<double> v) {
    if (v.empty()) throw InvalidArgument("median of empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

/// Per-noise-level medians across successful trials.
struct SummaryRow {
    double sigma = 0.0;
    std::size_t trials_ok = 0;
    double med_lambda_opt = 0.0, med_err_opt = 0.0;
    double med_lambda_cv = 0.0, med_err_cv = 0.0;
    double med_lambda_v = 0.0, med_err_v = 0.0;
    double med_lambda_s = 0.0, med_err_s = 0.0;
};

inline std::vector<SummaryRow> summarize(const BenchmarkReport& report) {
    std::vector<SummaryRow> rows;
    for (double sigma : report.config.sigmas) {
        SummaryRow row;
        row.sigma = sigma;
        std::vector<double> l0, e0, lc, ec, lv, ev, ls, es;
        for (const BenchmarkRecord& rec : report.records) {
            if (rec.sigma != sigma || !rec.ok) continue;
            l0.push_back(rec.lambda_opt);
            e0.push_back(rec.err_opt);
            lc.push_back(rec.cv.lambda_chosen);
            ec.push_back(rec.cv.err_at_chosen);
            lv.push_back(rec.vcurve.lambda_chosen);
            ev.push_back(rec.vcurve.err_at_chosen);
            ls.push_back(rec.scurve.lambda_chosen);
            es.push_back(rec.scurve.err_at_chosen);
        }
        row.trials_ok = l0.size();
        if (!l0.empty()) {
            row.med_lambda_opt = median(l0);
            row.med_err_opt = median(e0);
            row.med_lambda_cv = median(lc);
            row.med_err_cv = median(ec);
            row.med_lambda_v = median(lv);
            row.med_err_v = median(ev);
            row.med_lambda_s = median(ls);
            row.med_err_s = median(es);
        }
        rows.push_back(row);
    }
    return rows;
}

/// One CSV row per successful (sigma, trial); full-precision scientific
/// notation, mandatory header. Failed trials are recorded in the report
/// structure but emit no row.
inline std::string benchmark_csv(const BenchmarkReport& report) {
    std::string out =
        "sigma,trial,lambda_opt,mse_opt,lambda_cv,mse_cv,lambda_vc,mse_vc,lambda_s,mse_s\n";
    for (const BenchmarkRecord& rec : report.records) {
        if (!rec.ok) continue;
        out += fmt_e(rec.sigma);
        out += ',';
        out += std::to_string(rec.trial);
        for (double v : {rec.lambda_opt, rec.err_opt, rec.cv.lambda_chosen,
                         rec.cv.err_at_chosen, rec.vcurve.lambda_chosen, rec.vcurve.err_at_chosen,
                         rec.scurve.lambda_chosen, rec.scurve.err_at_chosen}) {
            out += ',';
            out += fmt_e(v);
        }
        out += '\n';
    }
    return out;
}

} // namespace whitsel
