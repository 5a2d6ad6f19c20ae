#pragma once

#include <cstdio>
#include <string>

namespace whitsel {

/// %.17g — round-trips any IEEE-754 double; fixed width-independent form
/// keeps CSV output byte-identical across runs.
inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// %.17e — full-precision scientific notation for report files.
inline std::string fmt_e(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

} // namespace whitsel
