// 16-dimensional projector Hamiltonian on four spins and its exact spectrum.
//
//   H = J/d^2 [ (1+Delta)(R_d1xR_d1 + 4 R_d2xR_d2)
//             + (1-Delta)(R_o1xR_o1 + 4 R_o2xR_o2) ]
//
// with R_t the rank-one bond factor d|psi_t><psi_t| on sites (1,2) and (3,4).
// Each R x R / d^2 term is the projector onto a type-matched product state, so
// H has rank 4 with nonzero eigenvalues {J(1+-Delta), 4J(1+-Delta)} and a
// 12-dimensional kernel.
#pragma once

#include "topospin/cupcap.hpp"
#include "topospin/numerics.hpp"

#include <string>
#include <vector>

namespace topospin {

struct ModelParams {
    double J = 1.0;       // energy scale of both projector terms
    double delta = 0.1;   // dimensionless splitting parameter
    double phi = 0.0;
    int eps = +1;
    double hbar = 1.0;

    TLParams tl() const { return TLParams{phi, eps}; }

    void validate() const {
        tl().validate();
        if (!(J > 0.0) || !std::isfinite(J))
            throw Error("ModelParams: J must be positive and finite");
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw Error("ModelParams: hbar must be positive and finite");
        if (!std::isfinite(delta))
            throw Error("ModelParams: delta must be finite");
    }

    // |delta| < 1 keeps all nonzero levels positive; callers may warn outside.
    bool delta_recommended() const { return std::abs(delta) < 1.0; }
};

struct DegenerateSpectrum : Error {
    using Error::Error;
};

inline Operator build_h(const ModelParams& mp) {
    mp.validate();
    const TLParams p = mp.tl();
    const double d2 = kLoopValue * kLoopValue;
    auto pair_term = [&](CupType t) {
        const Operator r = rank_one(t, p);
        return Operator(kron(r, r) / d2);
    };
    Operator h = mp.J * ((1.0 + mp.delta) * (pair_term(CupType::d1) + 4.0 * pair_term(CupType::d2)) +
                         (1.0 - mp.delta) * (pair_term(CupType::o1) + 4.0 * pair_term(CupType::o2)));
    return h;
}

// Full 16-level accounting: eigenvalues grouped within kTolGroup, one
// projector per distinct level, multiplicities summing to 16.
struct Spectrum {
    struct Level {
        double value = 0.0;
        int multiplicity = 0;
        Operator projector;
    };
    std::vector<Level> levels;  // ascending by value

    int dimension() const {
        int n = 0;
        for (const auto& l : levels) n += l.multiplicity;
        return n;
    }

    const Level* find(double value, double tol = kTolGroup) const {
        for (const auto& l : levels)
            if (std::abs(l.value - value) <= tol) return &l;
        return nullptr;
    }
};

inline Spectrum spectrum(const ModelParams& mp) {
    const EigenSystem es = hermitian_eig(build_h(mp));
    const int n = static_cast<int>(es.values.size());
    Spectrum sp;
    int start = 0;
    while (start < n) {
        int stop = start + 1;
        while (stop < n && es.values[stop] - es.values[stop - 1] <= kTolGroup) ++stop;
        Spectrum::Level level;
        level.multiplicity = stop - start;
        double sum = 0.0;
        for (int k = start; k < stop; ++k) sum += es.values[k];
        level.value = sum / level.multiplicity;
        level.projector = projector(es.vectors.middleCols(start, stop - start));
        sp.levels.push_back(std::move(level));
        start = stop;
    }
    return sp;
}

// Angular frequencies of the lower doublet and their difference.
struct Splitting {
    double omega_plus = 0.0;   // J(1+Delta)/hbar
    double omega_minus = 0.0;  // J(1-Delta)/hbar
    double delta_freq = 0.0;   // omega_plus - omega_minus = 2 J Delta / hbar
};

inline Splitting splitting(const ModelParams& mp) {
    mp.validate();
    Splitting s;
    s.omega_plus = mp.J * (1.0 + mp.delta) / mp.hbar;
    s.omega_minus = mp.J * (1.0 - mp.delta) / mp.hbar;
    s.delta_freq = 2.0 * mp.J * mp.delta / mp.hbar;
    return s;
}

}  // namespace topospin
