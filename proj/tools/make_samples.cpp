// Regenerates the CSV files under samples/. Deterministic: fixed seeds, full
// %.17g precision, so reruns are byte-identical and the committed goldens
// derived from these files stay valid.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <string>

#include "whitsel/format.hpp"
#include "whitsel/rng.hpp"

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::fprintf(stderr, "failed to write %s\n", path.string().c_str());
        std::exit(1);
    }
    std::printf("wrote %s (%zu bytes)\n", path.string().c_str(), content.size());
}

std::string noisy_sine() {
    whitsel::Rng rng(101);
    const std::set<std::size_t> gaps{23, 24, 71, 118, 152, 177};
    std::string out = "t,y\n";
    const std::size_t n = 200;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 4.0 * std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(n - 1);
        const double y = std::sin(t) + 0.2 * rng.gaussian();
        out += whitsel::fmt_g(t);
        out += ',';
        out += gaps.contains(i) ? "NA" : whitsel::fmt_g(y);
        out += '\n';
    }
    return out;
}

std::string trend_gaps() {
    whitsel::Rng rng(202);
    std::string out = "t,y\n";
    const std::size_t n = 300;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 0.1 * static_cast<double>(i);
        const double y = 2.0 - 0.3 * t + 0.02 * t * t + 0.3 * rng.gaussian();
        out += whitsel::fmt_g(t);
        out += ',';
        out += (i >= 120 && i <= 140) ? "NA" : whitsel::fmt_g(y);
        out += '\n';
    }
    return out;
}

std::string peaks() {
    whitsel::Rng rng(303);
    std::string out = "t,y\n";
    const std::size_t n = 400;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 10.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        const double y = 2.0 * std::exp(-(t - 3.0) * (t - 3.0) / 0.5) +
                         1.2 * std::exp(-(t - 7.0) * (t - 7.0) / 0.18) + 0.15 * rng.gaussian();
        out += whitsel::fmt_g(t);
        out += ',';
        out += whitsel::fmt_g(y);
        out += '\n';
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path dir = argc > 1 ? argv[1] : "samples";
    fs::create_directories(dir);
    write_file(dir / "noisy_sine.csv", noisy_sine());
    write_file(dir / "trend_gaps.csv", trend_gaps());
    write_file(dir / "peaks.csv", peaks());
    return 0;
}
