// Time evolution in the topological subspace, tunneling traces, and the
// repeated-projective-measurement survival simulator.
//
// Evolution is exact: exp(-iHt/hbar) is applied through the grouped spectral
// decomposition of H, so there is no integrator error to tune. Starting from
// e1 the population oscillates between e1 and e3 with angular frequency
// delta_freq = 2 J Delta / hbar and fully transfers at tau = pi/delta_freq.
#pragma once

#include "topospin/hamiltonian.hpp"
#include "topospin/topo_basis.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace topospin {

// Applies exp(-iHt/hbar) for arbitrary t with the spectrum computed once.
class Propagator {
public:
    explicit Propagator(const ModelParams& mp) : hbar_(mp.hbar), spectrum_(spectrum(mp)) {}

    StateVector operator()(const StateVector& initial, double t) const {
        StateVector out = StateVector::Zero(initial.size());
        for (const auto& level : spectrum_.levels) {
            const Complex phase = std::exp(Complex(0.0, -level.value * t / hbar_));
            out += phase * (level.projector * initial);
        }
        return out;
    }

private:
    double hbar_;
    Spectrum spectrum_;
};

inline StateVector evolve(const ModelParams& mp, const StateVector& initial, double t) {
    if (std::abs(initial.norm() - 1.0) > 1e-9)
        throw Error("evolve: initial state must be normalized");
    return Propagator(mp)(initial, t);
}

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> p_e1;
    std::vector<double> p_e3;
    std::vector<double> leak;  // probability outside span{e1, e3}
};

inline EvolutionTrace tunneling_trace(const ModelParams& mp, double t_max, int steps) {
    if (steps < 2) throw Error("tunneling_trace: steps must be at least 2");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw Error("tunneling_trace: t_max must be positive and finite");
    const TopoBasis basis = spectral_basis(mp);
    const Propagator prop(mp);

    EvolutionTrace tr;
    tr.times.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        const double t = t_max * k / (steps - 1);
        const StateVector psi = prop(basis.e1, t);
        const Complex a1 = inner(basis.e1, psi);
        const Complex a3 = inner(basis.e3, psi);
        const StateVector residual = psi - a1 * basis.e1 - a3 * basis.e3;
        tr.times.push_back(t);
        tr.p_e1.push_back(std::norm(a1));
        tr.p_e3.push_back(std::norm(a3));
        tr.leak.push_back(residual.squaredNorm());
    }
    return tr;
}

// First time at which the e1 population fully transfers to e3.
inline double tunneling_time(const ModelParams& mp) {
    mp.validate();
    if (mp.delta == 0.0)
        throw DegenerateSpectrum("tunneling time diverges at delta=0");
    return std::numbers::pi * mp.hbar / (2.0 * mp.J * std::abs(mp.delta));
}

struct ZenoRun {
    int n = 0;
    double interval = 0.0;          // tau / n
    double survival_exact = 0.0;    // product of per-step measured probabilities
    double survival_analytic = 0.0; // (cos^2(pi/2n))^n
    double survival_limit = 0.0;    // exp(-pi^2/4n)
};

// n cycles of [evolve for tau/n, project onto e1, keep the survival branch].
inline ZenoRun zeno_run(const ModelParams& mp, int n) {
    if (n < 1) throw Error("zeno_run: n must be at least 1");
    const TopoBasis basis = spectral_basis(mp);
    const Propagator prop(mp);
    const double tau = tunneling_time(mp);

    ZenoRun run;
    run.n = n;
    run.interval = tau / n;

    StateVector psi = basis.e1;
    double survival = 1.0;
    for (int step = 0; step < n; ++step) {
        psi = prop(psi, run.interval);
        const Complex a = inner(basis.e1, psi);
        const double p = std::norm(a);
        survival *= p;
        if (std::abs(a) == 0.0) {
            survival = 0.0;
            break;
        }
        // keep the measured branch; its phase is physical, the norm is not
        psi = (a / std::abs(a)) * basis.e1;
    }
    run.survival_exact = survival;

    const double half_angle = std::numbers::pi / (2.0 * n);
    const double c2 = std::cos(half_angle) * std::cos(half_angle);
    run.survival_analytic = std::pow(c2, n);
    run.survival_limit = std::exp(-std::numbers::pi * std::numbers::pi / (4.0 * n));
    return run;
}

}  // namespace topospin
