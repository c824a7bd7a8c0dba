#include "topospin/doublewell.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace topospin;

TEST_CASE("default well maps to the frozen reference values", "[doublewell]") {
    const WellMap m = map_well(WellParams{});
    CHECK(m.xi == Catch::Approx(4.4721359549995794).epsilon(1e-14));
    CHECK(m.J == Catch::Approx(2.1932454224643019).epsilon(1e-14));
    CHECK(m.delta == Catch::Approx(0.0068112962029232508).epsilon(1e-12));
    CHECK(m.tau == Catch::Approx(105.14845083468162).epsilon(1e-12));
    CHECK(m.delta_freq == Catch::Approx(2.0 * m.J * m.delta).epsilon(1e-14));
}

TEST_CASE("derived quantities satisfy their defining identities", "[doublewell]") {
    const std::vector<WellParams> cases = [] {
        std::vector<WellParams> v;
        v.push_back({});
        v.push_back({2.0, 3.0, 0.4, 25.0, 1.0});
        v.push_back({0.5, 1.0, 0.2, 80.0, 2.0});
        return v;
    }();
    for (const WellParams& w : cases) {
        const WellMap m = map_well(w);
        // tau * delta_freq = pi exactly by construction
        CHECK(std::abs(m.tau * m.delta_freq - std::numbers::pi) < 1e-12);
        // J (L-a)^2 2m / hbar^2 = pi^2
        const double width = w.L - w.a;
        CHECK(std::abs(m.J * width * width * 2.0 * w.m / (w.hbar * w.hbar) -
                       std::numbers::pi * std::numbers::pi) < 1e-12);
        // xi^2 hbar^2 = 2 m V0
        CHECK(std::abs(m.xi * m.xi * w.hbar * w.hbar - 2.0 * w.m * w.V0) < 1e-10);
    }
}

TEST_CASE("vanishing barrier width removes the exponential suppression", "[doublewell]") {
    WellParams w;
    w.a = 1e-9;
    const WellMap m = map_well(w);
    const double expected = 4.0 / (m.xi * w.L);
    CHECK(std::abs(m.delta - expected) / expected < 1e-7);
}

TEST_CASE("piecewise potential has the advertised regions", "[doublewell]") {
    const WellParams w;  // a=0.5, L=2, V0=10
    CHECK(potential(w, 0.0) == 10.0);
    CHECK(potential(w, 0.5) == 10.0);
    CHECK(potential(w, -0.5) == 10.0);
    CHECK(potential(w, 0.5000001) == 0.0);
    CHECK(potential(w, -1.2) == 0.0);
    CHECK(potential(w, 1.9999) == 0.0);
    CHECK(std::isinf(potential(w, 2.0)));
    CHECK(std::isinf(potential(w, -2.0)));
    CHECK(std::isinf(potential(w, 7.5)));
}

TEST_CASE("splitting parameter decreases with barrier height", "[doublewell]") {
    std::vector<double> deltas;
    for (int k = 0; k < 10; ++k) {
        WellParams w;
        w.V0 = std::pow(10.0, 0.0 + 3.0 * k / 9.0);  // 1 .. 1000 log spaced
        deltas.push_back(map_well(w).delta);
    }
    for (std::size_t i = 1; i < deltas.size(); ++i) CHECK(deltas[i] < deltas[i - 1]);
}

TEST_CASE("splitting parameter decreases with barrier width", "[doublewell]") {
    std::vector<double> deltas;
    const double lo = std::log10(0.05), hi = std::log10(1.5);
    for (int k = 0; k < 10; ++k) {
        WellParams w;
        w.a = std::pow(10.0, lo + (hi - lo) * k / 9.0);
        deltas.push_back(map_well(w).delta);
    }
    for (std::size_t i = 1; i < deltas.size(); ++i) CHECK(deltas[i] < deltas[i - 1]);
}

TEST_CASE("sweep table flags the decoupled regime", "[doublewell]") {
    const WellTable table = independent_wells_limit(WellParams{}, {1.0, 10.0, 100.0, 1000.0});
    REQUIRE(table.rows.size() == 4);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        CHECK(row.V0 == Catch::Approx(std::pow(10.0, static_cast<double>(i))));
        WellParams w;
        w.V0 = row.V0;
        const WellMap m = map_well(w);
        CHECK(row.delta == m.delta);
        CHECK(row.tau == m.tau);
        if (i > 0) {
            CHECK(row.delta < table.rows[i - 1].delta);
            CHECK(row.tau > table.rows[i - 1].tau);
        }
    }
    CHECK_FALSE(table.rows[0].independent);
    CHECK_FALSE(table.rows[1].independent);
    CHECK_FALSE(table.rows[2].independent);  // delta ~ 1.4e-7, still coupled
    CHECK(table.rows[3].independent);        // delta ~ 2e-21, below 1e-12
}

TEST_CASE("sweep rejects unsorted barrier heights", "[doublewell]") {
    CHECK_THROWS_AS(independent_wells_limit(WellParams{}, {10.0, 1.0}), Error);
    CHECK_THROWS_AS(independent_wells_limit(WellParams{}, {1.0, 1.0}), Error);
    CHECK_NOTHROW(independent_wells_limit(WellParams{}, {5.0}));
    CHECK(independent_wells_limit(WellParams{}, {}).rows.empty());
}

TEST_CASE("well parameter validation", "[doublewell]") {
    WellParams w;
    w.a = 2.5;  // must stay inside the walls
    CHECK_THROWS_AS(map_well(w), Error);
    w = {};
    w.a = 2.0;  // a == L also rejected
    CHECK_THROWS_AS(w.validate(), Error);
    w = {};
    w.m = 0.0;
    CHECK_THROWS_AS(w.validate(), Error);
    w = {};
    w.V0 = -1.0;
    CHECK_THROWS_AS(w.validate(), Error);
    w = {};
    w.L = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(w.validate(), Error);
    CHECK_NOTHROW(WellParams{}.validate());
}
