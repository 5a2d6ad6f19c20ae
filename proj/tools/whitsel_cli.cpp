// Command-line front end: smooth a CSV column with automatic or fixed
// regularization, or run the selector benchmark from a JSON config.
//
// Exit codes: 0 success, 2 usage/argument error, 3 unreadable or malformed
// input data, 4 numerical failure (singular system, degenerate selection),
// 1 anything unexpected.

#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "whitsel/whitsel.hpp"

namespace {

namespace fs = std::filesystem;

/// Pending file writes; nothing touches the disk until the whole run
/// succeeded, so a failing run leaves no partial outputs behind.
struct OutputSet {
    fs::path dir;
    std::vector<std::pair<std::string, std::string>> files;  ///< name -> content

    void add(std::string name, std::string content) {
        files.emplace_back(std::move(name), std::move(content));
    }

    void flush() const {
        fs::create_directories(dir);
        for (const auto& [name, content] : files) {
            std::ofstream out(dir / name, std::ios::binary);
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            if (!out) {
                throw std::runtime_error("failed to write " + (dir / name).string());
            }
        }
    }
};

struct SmoothArgs {
    std::string input;
    std::string t_col = "t";
    std::string y_col = "y";
    std::string w_col;
    bool index_as_t = false;
    std::string delimiter = ",";
    int order = 2;
    std::string select = "scurve";
    double fixed_lambda = 0.0;
    bool fixed_given = false;
    double grid_min_exp = -2.0;
    double grid_max_exp = 8.0;
    std::size_t grid_ppd = 10;
    std::string hat_method = "auto";
    std::size_t probes = 64;
    std::uint64_t seed = 1;
    std::string output_dir = ".";
    bool emit_svg = false;
    bool no_diagnostics = false;
    bool strict_spacing = false;
    bool allow_interpolation = false;
};

whitsel::HatMethod parse_hat(const std::string& name) {
    if (name == "auto") return whitsel::HatMethod::Auto;
    if (name == "exact") return whitsel::HatMethod::Exact;
    if (name == "rescale") return whitsel::HatMethod::SmallProblemRescale;
    return whitsel::HatMethod::StochasticProbe;
}

/// Largest relative deviation of a sample step from the uniform step. The
/// smoother works on sample index, so uneven spacing silently changes the
/// meaning of the penalty — worth a warning, or an error on request.
double spacing_deviation(const std::vector<double>& t) {
    const double step = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(step > 0.0)) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        worst = std::max(worst, std::abs(t[i] - t[i - 1] - step) / step);
    }
    return worst;
}

std::string signal_plot(const whitsel::Signal& signal, const whitsel::SmoothResult& fit) {
    whitsel::SvgSeries data{"data", {}, {}, "#7f7f7f"};
    for (std::size_t i = 0; i < signal.size(); ++i) {
        if (signal.w[i] > 0.0) {
            data.x.push_back(signal.t[i]);
            data.y.push_back(signal.y[i]);
        }
    }
    const whitsel::SvgSeries smooth{"smooth", signal.t, fit.s_hat, "#d62728"};
    const std::array<whitsel::SvgSeries, 2> series{std::move(data), smooth};
    return whitsel::svg_line_plot("smoothed signal", "t", "value", series);
}

std::string selection_plot(const whitsel::SelectionDiagnostics& diag) {
    const char* name = diag.method == whitsel::SelectMethod::Cv        ? "cv"
                       : diag.method == whitsel::SelectMethod::Vcurve ? "vcurve"
                                                                      : "scurve";
    const char* y_label = diag.method == whitsel::SelectMethod::Cv ? "sigma_cv" : "segment length";
    whitsel::SvgSeries curve{name, diag.curve_x, diag.curve_y, "#1f77b4"};
    std::size_t at = 0;
    for (std::size_t i = 1; i < diag.curve_x.size(); ++i) {
        if (std::abs(diag.curve_x[i] - diag.chosen_lambda) <
            std::abs(diag.curve_x[at] - diag.chosen_lambda)) {
            at = i;
        }
    }
    const std::array<double, 2> marker{diag.chosen_lambda, diag.curve_y[at]};
    const std::array<whitsel::SvgSeries, 1> series{std::move(curve)};
    return whitsel::svg_line_plot(std::string(name) + " selection", "lambda", y_label, series,
                                  marker, /*log_x=*/true);
}

int run_smooth(const SmoothArgs& args) {
    whitsel::IngestSpec spec;
    spec.t_col = args.t_col;
    spec.y_col = args.y_col;
    spec.w_col = args.w_col;
    spec.index_as_t = args.index_as_t;
    if (args.delimiter.size() != 1) {
        throw whitsel::InvalidArgument("--delimiter must be a single character");
    }
    spec.delimiter = args.delimiter[0];

    std::ifstream in(args.input, std::ios::binary);
    if (!in) {
        throw whitsel::ParseError("cannot open input file: " + args.input);
    }
    const whitsel::Signal signal = whitsel::ingest_csv(in, spec);

    const double deviation = spacing_deviation(signal.t);
    if (deviation > 1e-6) {
        std::ostringstream msg;
        msg << "sample spacing is uneven (max step deviation "
            << whitsel::fmt_g(deviation * 100.0)
            << "%); smoothing operates on sample index, not t";
        if (args.strict_spacing) {
            throw whitsel::ParseError(msg.str());
        }
        std::cerr << "warning: " << msg.str() << "\n";
    }

    OutputSet outputs;
    outputs.dir = args.output_dir;
    std::string summary;

    if (args.fixed_given) {
        if (args.fixed_lambda == 0.0 && !args.allow_interpolation) {
            throw whitsel::InvalidArgument(
                "--lambda 0 reproduces the data exactly; pass --allow-interpolation "
                "to confirm");
        }
        const whitsel::SmoothResult fit =
            whitsel::whittaker_smooth(signal, args.fixed_lambda, args.order);
        outputs.add("smoothed.csv", whitsel::smoothed_csv(signal, fit));
        if (args.emit_svg) outputs.add("signal_smooth.svg", signal_plot(signal, fit));
        summary = "selector=fixed lambda=" + whitsel::fmt_g(args.fixed_lambda) +
                  " n=" + std::to_string(signal.size()) +
                  " observed=" + std::to_string(signal.observed_count());
    } else {
        const whitsel::LambdaGrid grid =
            whitsel::lambda_grid(args.grid_min_exp, args.grid_max_exp, args.grid_ppd);
        whitsel::SelectionDiagnostics diag;
        if (args.select == "cv") {
            whitsel::CvOptions cv;
            cv.hat = parse_hat(args.hat_method);
            cv.probes = args.probes;
            cv.seed = args.seed;
            diag = whitsel::cv_curve(signal, grid, args.order, cv);
        } else if (args.select == "vcurve") {
            diag = whitsel::select_vcurve(signal, grid, args.order);
        } else {
            diag = whitsel::select_scurve(signal, grid, args.order);
        }
        const whitsel::SmoothResult fit =
            whitsel::whittaker_smooth(signal, diag.chosen_lambda, args.order);
        outputs.add("smoothed.csv", whitsel::smoothed_csv(signal, fit));
        if (!args.no_diagnostics) {
            const std::array<whitsel::SelectionDiagnostics, 1> diags{diag};
            outputs.add("diagnostics.csv", whitsel::diagnostics_csv(diags));
        }
        if (args.emit_svg) {
            outputs.add("signal_smooth.svg", signal_plot(signal, fit));
            outputs.add("selection_curve.svg", selection_plot(diag));
        }
        summary = "selector=" + args.select + " lambda=" + whitsel::fmt_g(diag.chosen_lambda) +
                  " grid=10^[" + whitsel::fmt_g(grid.decades_min) + ".." +
                  whitsel::fmt_g(grid.decades_max) +
                  "] ppd=" + std::to_string(grid.points_per_decade) +
                  " dropped=" + std::to_string(diag.dropped.size()) +
                  " n=" + std::to_string(signal.size()) +
                  " observed=" + std::to_string(signal.observed_count());
    }

    outputs.flush();
    std::cout << summary << "\n";
    return 0;
}

whitsel::BenchmarkConfig load_benchmark_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw whitsel::ParseError("cannot open benchmark config: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
        whitsel::BenchmarkConfig config;
        config.expression_id = j.value("expression_id", config.expression_id);
        config.n = j.value("n", config.n);
        config.t_min = j.value("t_min", config.t_min);
        config.t_max = j.value("t_max", config.t_max);
        if (j.contains("sigmas")) config.sigmas = j["sigmas"].get<std::vector<double>>();
        config.trials = j.value("trials", config.trials);
        config.order = j.value("order", config.order);
        config.base_seed = j.value("base_seed", config.base_seed);
        config.sum_abs_metric = j.value("mae", config.sum_abs_metric);
        if (j.contains("grid")) {
            const auto& g = j["grid"];
            config.grid = whitsel::lambda_grid(g.value("min_exp", -2.0), g.value("max_exp", 8.0),
                                               g.value("ppd", std::size_t{10}));
        }
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw whitsel::ParseError(std::string("benchmark config: ") + e.what());
    }
}

int run_benchmark_mode(const std::string& config_path, const std::string& output_dir,
                       bool mae_flag, bool emit_svg) {
    whitsel::BenchmarkConfig config = load_benchmark_config(config_path);
    config.sum_abs_metric = config.sum_abs_metric || mae_flag;
    const whitsel::BenchmarkReport report = whitsel::run_benchmark(config);

    std::size_t failed = 0;
    for (const auto& rec : report.records) {
        if (!rec.ok) {
            ++failed;
            std::cerr << "warning: sigma=" << rec.sigma << " trial=" << rec.trial
                      << " failed: " << rec.error << "\n";
        }
    }
    if (!report.records.empty() && failed == report.records.size()) {
        throw whitsel::AllPointsDegenerate("every benchmark trial failed; first error: " +
                                           report.records.front().error);
    }

    OutputSet outputs;
    outputs.dir = output_dir;
    outputs.add("benchmark.csv", whitsel::benchmark_csv(report));

    const auto rows = whitsel::summarize(report);
    if (emit_svg && rows.size() >= 2) {
        std::vector<whitsel::SvgSeries> series(4);
        const char* labels[4] = {"optimal", "cv", "vcurve", "scurve"};
        const char* colors[4] = {"#2ca02c", "#1f77b4", "#ff7f0e", "#d62728"};
        for (int k = 0; k < 4; ++k) {
            series[k].label = labels[k];
            series[k].color = colors[k];
        }
        for (const auto& row : rows) {
            if (row.trials_ok == 0) continue;
            for (auto* s : {&series[0], &series[1], &series[2], &series[3]}) {
                s->x.push_back(row.sigma);
            }
            series[0].y.push_back(row.med_err_opt);
            series[1].y.push_back(row.med_err_cv);
            series[2].y.push_back(row.med_err_v);
            series[3].y.push_back(row.med_err_s);
        }
        outputs.add("benchmark_medians.svg",
                    whitsel::svg_line_plot("median error by noise level", "sigma",
                                           config.sum_abs_metric ? "median sum |err|"
                                                                 : "median mse",
                                           series));
    }
    outputs.flush();

    std::cout << "benchmark expression=" << config.expression_id << " n=" << config.n
              << " order=" << config.order << " trials=" << config.trials << " grid=10^["
              << whitsel::fmt_g(config.grid.decades_min) << ".."
              << whitsel::fmt_g(config.grid.decades_max)
              << "] ppd=" << config.grid.points_per_decade
              << " metric=" << (config.sum_abs_metric ? "sum_abs" : "mse") << "\n";
    for (const auto& row : rows) {
        std::cout << "sigma=" << row.sigma << " ok=" << row.trials_ok << "/" << config.trials;
        if (row.trials_ok > 0) {
            std::cout << " med_err_opt=" << whitsel::fmt_g(row.med_err_opt)
                      << " med_err_cv=" << whitsel::fmt_g(row.med_err_cv)
                      << " med_err_v=" << whitsel::fmt_g(row.med_err_v)
                      << " med_err_s=" << whitsel::fmt_g(row.med_err_s)
                      << " med_lambda_s=" << whitsel::fmt_g(row.med_lambda_s);
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Whittaker smoothing with automatic regularization selection"};
    app.get_formatter()->column_width(34);

    SmoothArgs args;
    std::string benchmark_config;

    auto* opt_input = app.add_option("--input", args.input, "input CSV file");
    app.add_option("--t-col", args.t_col, "abscissa column name")->capture_default_str();
    app.add_option("--y-col", args.y_col, "value column name")->capture_default_str();
    app.add_option("--w-col", args.w_col, "optional weight column name");
    app.add_flag("--index-as-t", args.index_as_t, "use the row index as t (no t column)");
    app.add_option("--delimiter", args.delimiter, "field separator")->capture_default_str();
    app.add_option("--order", args.order, "difference order (1..3)")->capture_default_str();
    auto* opt_select =
        app.add_option("--select", args.select, "lambda selector")
            ->check(CLI::IsMember({"cv", "vcurve", "scurve"}))
            ->capture_default_str();
    auto* opt_lambda =
        app.add_option("--lambda", args.fixed_lambda, "fixed lambda (skips selection)");
    app.add_option("--grid-min-exp", args.grid_min_exp, "grid lower bound, as log10")
        ->capture_default_str();
    app.add_option("--grid-max-exp", args.grid_max_exp, "grid upper bound, as log10")
        ->capture_default_str();
    app.add_option("--grid-ppd", args.grid_ppd, "grid points per decade")->capture_default_str();
    app.add_option("--hat-method", args.hat_method, "leverage computation for cv")
        ->check(CLI::IsMember({"auto", "exact", "rescale", "probe"}))
        ->capture_default_str();
    app.add_option("--probes", args.probes, "probe count for --hat-method probe")
        ->capture_default_str();
    app.add_option("--seed", args.seed, "seed for stochastic probes")->capture_default_str();
    app.add_option("--output-dir", args.output_dir, "directory for result files")
        ->capture_default_str();
    app.add_flag("--emit-svg", args.emit_svg, "also write SVG plots");
    app.add_flag("--no-diagnostics", args.no_diagnostics, "skip diagnostics.csv");
    app.add_flag("--strict-spacing", args.strict_spacing,
                 "treat uneven sample spacing as an error");
    app.add_flag("--allow-interpolation", args.allow_interpolation,
                 "permit --lambda 0 (pure interpolation)");
    app.add_flag("--mae", "benchmark: sum of absolute errors instead of mse");
    auto* opt_bench = app.add_option("--benchmark-config", benchmark_config,
                                     "JSON simulation config; runs the selector benchmark");

    opt_lambda->excludes(opt_select);
    opt_bench->excludes(opt_input);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    args.fixed_given = opt_lambda->count() > 0;

    try {
        if (!benchmark_config.empty()) {
            return run_benchmark_mode(benchmark_config, args.output_dir,
                                      app.count("--mae") > 0, args.emit_svg);
        }
        if (opt_input->count() == 0) {
            std::cerr << "error: provide --input for smoothing or --benchmark-config for the "
                         "simulation benchmark\n";
            return 2;
        }
        return run_smooth(args);
    } catch (const whitsel::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const whitsel::DuplicateAbscissa& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const whitsel::TooFewRows& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const whitsel::NotPositiveDefinite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const whitsel::DegenerateHat& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const whitsel::AllPointsDegenerate& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const whitsel::NonFiniteInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const whitsel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
