#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <istream>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "whitsel/errors.hpp"
#include "whitsel/format.hpp"
#include "whitsel/selectors.hpp"
#include "whitsel/signal.hpp"
#include "whitsel/smoother.hpp"

namespace whitsel {

/// Column mapping and parse options for CSV ingestion.
struct IngestSpec {
    std::string t_col = "t";
    std::string y_col = "y";
    std::string w_col;         ///< empty: no weight column, all observed get w = 1
    bool index_as_t = false;   ///< ignore t_col, use row order 0..n-1
    char delimiter = ',';
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Tokens that encode a missing observation: empty cell, "nan", "NA"
/// (case-insensitive).
inline bool is_missing_token(std::string_view cell) {
    if (cell.empty()) return true;
    std::string low(cell);
    std::transform(low.begin(), low.end(), low.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return low == "nan" || low == "na";
}

inline double parse_number(std::string_view cell, std::size_t line, const char* what) {
    const std::string_view s = trim(cell);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(line) + ": cannot parse " + what + " value '" +
                         std::string(cell) + "'");
    }
    return v;
}

inline std::vector<std::string> split_row(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string::npos) {
            cells.emplace_back(line.substr(start));
            return cells;
        }
        cells.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace detail

/**
 * Read a header-first CSV into a Signal. Missing y tokens become gaps
 * (w = 0, y = 0); rows are sorted by t; duplicate t values are rejected.
 * Line numbers in errors are 1-based counting the header line.
 */
inline Signal ingest_csv(std::istream& in, const IngestSpec& spec) {
    std::string line;
    std::size_t line_no = 0;
    // header
    std::size_t t_idx = std::string::npos, y_idx = std::string::npos,
                w_idx = std::string::npos;
    std::size_t n_cols = 0;
    {
        if (!std::getline(in, line)) throw ParseError("line 1: missing header row");
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto cells = detail::split_row(line, spec.delimiter);
        n_cols = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto name = detail::trim(cells[i]);
            if (name == spec.t_col) t_idx = i;
            if (name == spec.y_col) y_idx = i;
            if (!spec.w_col.empty() && name == spec.w_col) w_idx = i;
        }
        if (y_idx == std::string::npos) {
            throw ParseError("line 1: column '" + spec.y_col + "' not found in header");
        }
        if (!spec.index_as_t && t_idx == std::string::npos) {
            throw ParseError("line 1: column '" + spec.t_col + "' not found in header");
        }
        if (!spec.w_col.empty() && w_idx == std::string::npos) {
            throw ParseError("line 1: column '" + spec.w_col + "' not found in header");
        }
    }
    Signal sig;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const auto cells = detail::split_row(line, spec.delimiter);
        if (cells.size() != n_cols) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(n_cols) + " cells, got " +
                             std::to_string(cells.size()));
        }
        double t;
        if (spec.index_as_t) {
            t = static_cast<double>(sig.t.size());
        } else {
            const auto cell = detail::trim(cells[t_idx]);
            if (detail::is_missing_token(cell)) {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": missing t value (only y may be missing)");
            }
            t = detail::parse_number(cells[t_idx], line_no, "t");
        }
        double y = 0.0, w = 1.0;
        if (detail::is_missing_token(detail::trim(cells[y_idx]))) {
            y = 0.0;
            w = 0.0;
        } else {
            y = detail::parse_number(cells[y_idx], line_no, "y");
        }
        if (w_idx != std::string::npos && w > 0.0) {
            const auto cell = detail::trim(cells[w_idx]);
            w = detail::is_missing_token(cell) ? 0.0
                                               : detail::parse_number(cells[w_idx], line_no, "w");
            if (!(w >= 0.0) || !(w <= 1.0)) {
                throw ParseError("line " + std::to_string(line_no) + ": weight " + fmt_g(w) +
                                 " outside [0, 1]");
            }
            if (w == 0.0) y = 0.0;
        }
        sig.t.push_back(t);
        sig.y.push_back(y);
        sig.w.push_back(w);
    }
    if (sig.size() < 4) {
        throw TooFewRows("need at least 4 data rows, got " + std::to_string(sig.size()));
    }
    std::vector<std::size_t> idx(sig.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return sig.t[a] < sig.t[b]; });
    Signal sorted;
    sorted.t.reserve(sig.size());
    sorted.y.reserve(sig.size());
    sorted.w.reserve(sig.size());
    for (std::size_t i : idx) {
        sorted.t.push_back(sig.t[i]);
        sorted.y.push_back(sig.y[i]);
        sorted.w.push_back(sig.w[i]);
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (!(sorted.t[i] > sorted.t[i - 1])) {
            throw DuplicateAbscissa("duplicate t value " + fmt_g(sorted.t[i]));
        }
    }
    return sorted;
}

/// smoothed.csv body: t, y, w, s_hat, residual per sample, %.17g throughout.
inline std::string smoothed_csv(const Signal& signal, const SmoothResult& result) {
    if (result.s_hat.size() != signal.size()) {
        throw DimensionMismatch("smoothed_csv: result does not match signal length");
    }
    std::string out = "t,y,w,s_hat,residual\n";
    for (std::size_t i = 0; i < signal.size(); ++i) {
        out += fmt_g(signal.t[i]);
        out += ',';
        out += fmt_g(signal.y[i]);
        out += ',';
        out += fmt_g(signal.w[i]);
        out += ',';
        out += fmt_g(result.s_hat[i]);
        out += ',';
        out += fmt_g(result.residuals[i]);
        out += '\n';
    }
    return out;
}

/**
 * diagnostics.csv body. Every method writes the same header; cells a method
 * does not produce stay empty. Distance rows (vcurve/scurve) carry the
 * left endpoint of the consecutive pair in the log_* columns.
 */
inline std::string diagnostics_csv(std::span<const SelectionDiagnostics> diags) {
    std::string out = "lambda_x,cv_sigma,v_distance,s_distance,log_R,log_S,log_Hres,log_Hsmooth\n";
    for (const SelectionDiagnostics& d : diags) {
        for (std::size_t i = 0; i < d.curve_x.size(); ++i) {
            std::array<std::string, 8> cells;
            cells[0] = fmt_g(d.curve_x[i]);
            switch (d.method) {
                case SelectMethod::Cv:
                    cells[1] = fmt_g(d.curve_y[i]);
                    break;
                case SelectMethod::Vcurve:
                    cells[2] = fmt_g(d.curve_y[i]);
                    cells[4] = fmt_g(d.aux[i][0]);
                    cells[5] = fmt_g(d.aux[i][1]);
                    break;
                case SelectMethod::Scurve:
                    cells[3] = fmt_g(d.curve_y[i]);
                    cells[6] = fmt_g(d.aux[i][0]);
                    cells[7] = fmt_g(d.aux[i][1]);
                    break;
            }
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c) out += ',';
                out += cells[c];
            }
            out += '\n';
        }
    }
    return out;
}

} // namespace whitsel
