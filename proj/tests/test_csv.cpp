#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "whitsel/csv.hpp"
#include "whitsel/selectors.hpp"
#include "whitsel/smoother.hpp"

using whitsel::IngestSpec;
using whitsel::Signal;
using whitsel::ingest_csv;

namespace {

Signal ingest(const std::string& text, IngestSpec spec = {}) {
    std::istringstream in(text);
    return ingest_csv(in, spec);
}

}  // namespace

TEST_CASE("plain table ingests with unit weights") {
    const auto sig = ingest("t,y\n0,1.0\n1,2.5\n2,2.0\n3,0.5\n");
    REQUIRE(sig.size() == 4);
    CHECK(sig.t == std::vector<double>{0, 1, 2, 3});
    CHECK(sig.y == std::vector<double>{1.0, 2.5, 2.0, 0.5});
    CHECK(sig.w == std::vector<double>{1, 1, 1, 1});
}

TEST_CASE("missing y cells become zero-weight gaps") {
    SECTION("empty cell") {
        const auto sig = ingest("t,y\n0,1\n1,2\n2,\n3,4\n4,5\n");
        CHECK(sig.w == std::vector<double>{1, 1, 0, 1, 1});
        CHECK(sig.y[2] == 0.0);
    }
    SECTION("textual missing markers, any case") {
        const auto sig = ingest("t,y\n0,1\n1,nan\n2,NA\n3,Na\n4,5\n");
        CHECK(sig.w == std::vector<double>{1, 0, 0, 0, 1});
    }
    SECTION("missing t is an error") {
        std::istringstream in("t,y\n0,1\n,2\n2,3\n3,4\n");
        CHECK_THROWS_AS(ingest_csv(in, {}), whitsel::ParseError);
    }
}

TEST_CASE("index_as_t synthesizes the abscissa") {
    IngestSpec spec;
    spec.index_as_t = true;
    const auto sig = ingest("y\n5\n6\n7\n8\n9\n", spec);
    CHECK(sig.t == std::vector<double>{0, 1, 2, 3, 4});
    CHECK(sig.y == std::vector<double>{5, 6, 7, 8, 9});
}

TEST_CASE("parse failures report the 1-based line") {
    std::string text = "t,y\n";
    for (int i = 0; i < 14; ++i) {
        text += std::to_string(i) + "," + std::to_string(i * 0.5) + "\n";
    }
    text += "99,not_a_number\n";  // line 16
    text += "100,1\n";
    try {
        ingest(text);
        FAIL("expected ParseError");
    } catch (const whitsel::ParseError& e) {
        CHECK(std::string(e.what()).find("16") != std::string::npos);
    }
}

TEST_CASE("structural errors") {
    SECTION("duplicate abscissa") {
        CHECK_THROWS_AS(ingest("t,y\n0,1\n1,2\n1,3\n2,4\n"), whitsel::DuplicateAbscissa);
    }
    SECTION("too few usable rows") {
        CHECK_THROWS_AS(ingest("t,y\n0,1\n1,2\n2,3\n"), whitsel::TooFewRows);
    }
    SECTION("header lacks a requested column") {
        std::istringstream in("time,y\n0,1\n1,2\n2,3\n3,4\n");
        CHECK_THROWS_AS(ingest_csv(in, {}), whitsel::ParseError);
    }
    SECTION("row with wrong cell count") {
        CHECK_THROWS_AS(ingest("t,y\n0,1\n1\n2,3\n3,4\n"), whitsel::ParseError);
    }
}

TEST_CASE("rows are sorted by t before validation") {
    const auto sig = ingest("t,y\n3,30\n0,0\n2,20\n1,10\n");
    CHECK(sig.t == std::vector<double>{0, 1, 2, 3});
    CHECK(sig.y == std::vector<double>{0, 10, 20, 30});
}

TEST_CASE("explicit weight column") {
    IngestSpec spec;
    spec.w_col = "w";
    SECTION("values pass through, zero weight zeroes y") {
        const auto sig = ingest("t,y,w\n0,1,1\n1,2,0.5\n2,9,0\n3,4,1\n", spec);
        CHECK(sig.w == std::vector<double>{1, 0.5, 0, 1});
        CHECK(sig.y[2] == 0.0);
    }
    SECTION("missing weight token means zero") {
        const auto sig = ingest("t,y,w\n0,1,1\n1,2,\n2,3,1\n3,4,1\n", spec);
        CHECK(sig.w[1] == 0.0);
        CHECK(sig.y[1] == 0.0);
    }
    SECTION("out-of-range weight rejected") {
        std::istringstream in("t,y,w\n0,1,1\n1,2,1.5\n2,3,1\n3,4,1\n");
        CHECK_THROWS_AS(ingest_csv(in, spec), whitsel::ParseError);
    }
}

TEST_CASE("alternate delimiters and CRLF endings") {
    IngestSpec spec;
    spec.delimiter = ';';
    const auto sig = ingest("t;y\r\n0;1\r\n1;2\r\n2;3\r\n3;4\r\n", spec);
    REQUIRE(sig.size() == 4);
    CHECK(sig.y == std::vector<double>{1, 2, 3, 4});
}

TEST_CASE("named columns can sit anywhere in a wider table") {
    IngestSpec spec;
    spec.t_col = "time_s";
    spec.y_col = "reading";
    const auto sig =
        ingest("id,reading,junk,time_s\nA,1.5,x,0\nB,2.5,y,1\nC,3.5,z,2\nD,4.5,q,3\n", spec);
    CHECK(sig.t == std::vector<double>{0, 1, 2, 3});
    CHECK(sig.y == std::vector<double>{1.5, 2.5, 3.5, 4.5});
}

TEST_CASE("smoothed output round-trips exactly through re-ingest") {
    Signal sig;
    const std::size_t n = 60;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * 4.0 * std::numbers::pi / (n - 1);
        sig.t.push_back(t);
        sig.y.push_back(std::sin(t) + 0.05 * std::cos(31.0 * t));
        sig.w.push_back(i % 13 == 5 ? 0.0 : 1.0);
    }
    const auto fit = whitsel::whittaker_smooth(sig, 50.0, 2);
    const std::string out = whitsel::smoothed_csv(sig, fit);
    REQUIRE(out.rfind("t,y,w,s_hat,residual\n", 0) == 0);

    IngestSpec spec;
    spec.y_col = "s_hat";
    std::istringstream in(out);
    const auto back = ingest_csv(in, spec);
    REQUIRE(back.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(back.t[i] == sig.t[i]);  // %.17g round-trips doubles exactly
        REQUIRE(back.y[i] == fit.s_hat[i]);
    }
}

TEST_CASE("re-smoothing the fit moves less than smoothing the data") {
    Signal sig;
    const std::size_t n = 120;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * 0.1;
        sig.t.push_back(t);
        sig.y.push_back(std::sin(t) + ((i * 2654435761u) % 1000) * 1e-4 - 0.05);
        sig.w.push_back(1.0);
    }
    const double lambda = 100.0;
    const auto first = whitsel::whittaker_smooth(sig, lambda, 2);
    Signal refit = sig;
    refit.y = first.s_hat;
    const auto second = whitsel::whittaker_smooth(refit, lambda, 2);
    double move_data = 0.0, move_fit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        move_data += (first.s_hat[i] - sig.y[i]) * (first.s_hat[i] - sig.y[i]);
        move_fit += (second.s_hat[i] - refit.y[i]) * (second.s_hat[i] - refit.y[i]);
    }
    CHECK(move_fit <= move_data);
}

TEST_CASE("diagnostics table carries every selector's curve") {
    Signal sig;
    const std::size_t n = 200;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * 4.0 * std::numbers::pi / (n - 1);
        sig.t.push_back(t);
        sig.y.push_back(std::sin(t) + 0.2 * std::sin(997.0 * t + 1.3));
        sig.w.push_back(1.0);
    }
    const auto grid = whitsel::lambda_grid(-1, 5, 2);
    std::vector<whitsel::SelectionDiagnostics> diags;
    diags.push_back(whitsel::cv_curve(sig, grid, 2, {}));
    diags.push_back(whitsel::select_vcurve(sig, grid, 2));
    diags.push_back(whitsel::select_scurve(sig, grid, 2));
    const std::string csv = whitsel::diagnostics_csv(diags);
    REQUIRE(csv.rfind("lambda_x,cv_sigma,v_distance,s_distance,log_R,log_S,log_Hres,log_Hsmooth\n",
                      0) == 0);

    // parse back: every data row has 8 cells; cv rows fill col 1, v rows cols 2/4/5,
    // s rows cols 3/6/7
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::size_t cv_rows = 0, v_rows = 0, s_rows = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        while (cells.size() < 8) cells.push_back("");
        REQUIRE(cells.size() == 8);
        REQUIRE(!cells[0].empty());
        if (!cells[1].empty()) {
            ++cv_rows;
            CHECK(std::stod(cells[1]) >= 0.0);
        }
        if (!cells[2].empty()) {
            ++v_rows;
            CHECK(!cells[4].empty());
            CHECK(!cells[5].empty());
        }
        if (!cells[3].empty()) {
            ++s_rows;
            CHECK(!cells[6].empty());
            CHECK(!cells[7].empty());
        }
    }
    CHECK(cv_rows == grid.size());
    CHECK(v_rows == diags[1].curve_x.size());
    CHECK(s_rows == diags[2].curve_x.size());
    CHECK(v_rows >= 2);
    CHECK(s_rows >= 2);
}
