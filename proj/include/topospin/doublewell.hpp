// Map a symmetric double-well potential onto the model parameters (J, Delta).
//
// The analogue is a particle of mass m between hard walls at |x| = L with a
// barrier V0 on |x| <= a:
//
//   xi    = sqrt(2 m V0) / hbar
//   J     = hbar^2 pi^2 / (2 m (L-a)^2)
//   Delta = 4 exp(-2 xi a) / (xi (L-a))
//
// As V0 (or a) grows, Delta -> 0 and the wells decouple. The mapping is
// one-directional; recovering well geometry from (J, Delta) is underdetermined.
#pragma once

#include "topospin/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace topospin {

struct WellParams {
    double m = 1.0;
    double L = 2.0;   // outer hard-wall position
    double a = 0.5;   // barrier half-width, 0 < a < L
    double V0 = 10.0; // barrier height
    double hbar = 1.0;

    void validate() const {
        const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
        if (!positive(m) || !positive(L) || !positive(a) || !positive(V0) || !positive(hbar))
            throw Error("WellParams: m, L, a, V0, hbar must all be positive and finite");
        if (!(a < L)) throw Error("WellParams: requires a < L");
    }
};

struct WellMap {
    double xi = 0.0;         // barrier decay constant
    double J = 0.0;          // energy scale
    double delta = 0.0;      // splitting parameter
    double delta_freq = 0.0; // 2 J delta / hbar
    double tau = 0.0;        // pi / delta_freq
};

inline WellMap map_well(const WellParams& w) {
    w.validate();
    WellMap out;
    out.xi = std::sqrt(2.0 * w.m * w.V0) / w.hbar;
    const double width = w.L - w.a;
    out.J = w.hbar * w.hbar * std::numbers::pi * std::numbers::pi / (2.0 * w.m * width * width);
    out.delta = 4.0 * std::exp(-2.0 * out.xi * w.a) / (out.xi * width);
    out.delta_freq = 2.0 * out.J * out.delta / w.hbar;
    out.tau = std::numbers::pi / out.delta_freq;
    return out;
}

// Barrier for |x| <= a, zero in the wells, infinite at and beyond the walls.
inline double potential(const WellParams& w, double x) {
    w.validate();
    const double ax = std::abs(x);
    if (ax >= w.L) return std::numeric_limits<double>::infinity();
    if (ax <= w.a) return w.V0;
    return 0.0;
}

inline constexpr double kIndependentWellsThreshold = 1e-12;

struct WellTable {
    struct Row {
        double V0 = 0.0;
        double delta = 0.0;
        double tau = 0.0;
        bool independent = false;  // delta below threshold: wells decoupled
    };
    std::vector<Row> rows;
};

inline WellTable independent_wells_limit(const WellParams& w, const std::vector<double>& v0_list) {
    for (std::size_t i = 1; i < v0_list.size(); ++i)
        if (!(v0_list[i] > v0_list[i - 1]))
            throw Error("independent_wells_limit: V0 list must be strictly increasing");
    WellTable table;
    for (double v0 : v0_list) {
        WellParams row_params = w;
        row_params.V0 = v0;
        const WellMap m = map_well(row_params);
        table.rows.push_back({v0, m.delta, m.tau, m.delta < kIndependentWellsThreshold});
    }
    return table;
}

}  // namespace topospin
