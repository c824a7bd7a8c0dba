// Aggregated self-checks: algebra relations, cup-state geometry, Hamiltonian
// spectrum, and the dual-route basis consistency, each reported as a named
// residual against an explicit tolerance.
//
// A perturbation can be injected into the generator relation checks so a
// harness can confirm the checks are able to fail.
#pragma once

#include "topospin/cupcap.hpp"
#include "topospin/diagram.hpp"
#include "topospin/dynamics.hpp"
#include "topospin/hamiltonian.hpp"
#include "topospin/tl_algebra.hpp"
#include "topospin/topo_basis.hpp"

#include <algorithm>
#include <numbers>
#include <string>
#include <vector>

namespace topospin {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool mandatory = true;
    bool passed = false;
    std::string note;
};

struct VerifyReport {
    ModelParams params;
    double perturbation = 0.0;
    std::vector<CheckResult> checks;
    ConsistencyReport consistency;

    bool all_mandatory_passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckResult& c) { return c.passed || !c.mandatory; });
    }
};

struct VerifyOptions {
    double perturbation = 0.0;  // injected into the relation checks only
    double tol_abs = kTolAbs;
    double tol_eig = kTolEig;
};

inline VerifyReport run_verification(const ModelParams& mp, const VerifyOptions& opt = {}) {
    mp.validate();
    VerifyReport report;
    report.params = mp;
    report.perturbation = opt.perturbation;

    const auto add = [&](std::string name, double residual, double tol, bool mandatory = true,
                         std::string note = "") {
        report.checks.push_back({std::move(name), residual, tol, mandatory,
                                 residual <= tol, std::move(note)});
    };
    const TLParams p = mp.tl();

    // generator relations at the requested point and over the standard grid
    {
        double worst_point = 0.0;
        double worst_grid = 0.0;
        for (int k = 0; k < 12; ++k) {
            for (int eps : {+1, -1}) {
                const TLParams gp{k * std::numbers::pi / 6.0, eps};
                for (int sites = 2; sites <= 5; ++sites)
                    worst_grid = std::max(
                        worst_grid,
                        verify_relations(gp, sites, opt.perturbation).max_residual());
            }
        }
        for (int sites = 2; sites <= 5; ++sites)
            worst_point = std::max(
                worst_point, verify_relations(p, sites, opt.perturbation).max_residual());
        add("tl-relations-point", worst_point, opt.tol_abs);
        add("tl-relations-grid", worst_grid, opt.tol_abs);
    }

    // cup states orthonormal
    {
        Operator c(4, 4);
        for (int i = 0; i < 4; ++i) c.col(i) = cup_state(kAllCupTypes[i], p);
        add("cup-orthonormality", max_abs(Operator(c.adjoint() * c - Operator::Identity(4, 4))),
            opt.tol_abs);
    }

    // generator equals the sum of its two rank-one bond factors
    add("generator-decomposition",
        max_abs(Operator(rank_one(CupType::d1, p) + rank_one(CupType::d2, p) -
                         make_generator(p))),
        opt.tol_abs);

    // loop rule through the diagram evaluator
    {
        double worst = 0.0;
        for (CupType top : kAllCupTypes) {
            for (CupType bottom : kAllCupTypes) {
                const std::string src = "cap(1,2:" + std::string(to_string(top)) +
                                        ");cup(1,2:" + std::string(to_string(bottom)) + ")";
                const Complex value = evaluate(src, p).scalar();
                const Complex want = top == bottom ? Complex(kLoopValue, 0.0) : Complex(0.0, 0.0);
                worst = std::max(worst, std::abs(value - want));
            }
        }
        add("loop-values", worst, opt.tol_abs);
    }

    // Hamiltonian block
    {
        const Operator h = build_h(mp);
        add("hamiltonian-hermitian", max_abs(Operator(h - h.adjoint())), opt.tol_abs);

        const Spectrum sp = spectrum(mp);
        Operator sum = Operator::Zero(16, 16);
        for (const auto& level : sp.levels) sum += level.projector;
        add("spectral-completeness", max_abs(Operator(sum - Operator::Identity(16, 16))),
            opt.tol_eig);

        std::vector<double> nonzero;
        int kernel = 0;
        for (const auto& level : sp.levels) {
            if (std::abs(level.value) <= kTolGroup)
                kernel += level.multiplicity;
            else
                nonzero.insert(nonzero.end(), level.multiplicity, level.value);
        }
        std::vector<double> expected{mp.J * (1.0 - mp.delta), mp.J * (1.0 + mp.delta),
                                     4.0 * mp.J * (1.0 - mp.delta), 4.0 * mp.J * (1.0 + mp.delta)};
        std::sort(expected.begin(), expected.end());
        double worst = nonzero.size() == expected.size() ? 0.0 : 1.0;
        if (nonzero.size() == expected.size())
            for (std::size_t i = 0; i < nonzero.size(); ++i)
                worst = std::max(worst, std::abs(nonzero[i] - expected[i]));
        add("nonzero-spectrum", worst, opt.tol_eig);
        add("kernel-dimension", std::abs(kernel - 12.0), 0.5);
    }

    // dual-route basis consistency
    report.consistency = consistency_report(p, mp);
    {
        const ConsistencyReport& c = report.consistency;
        double graphical = 0.0;
        for (const auto& r : c.reps)
            if (r.label.rfind("graphical", 0) == 0)
                graphical = std::max(graphical, r.reference_deviation);
        add("graphical-2d-rep", graphical, opt.tol_abs);
        add("spectral-eigenrelations", c.spectral_eigen_residual, opt.tol_eig);
        add("spectral-orthonormality", c.spectral_gram_residual, opt.tol_abs);
        add("subspace-agreement", c.projector_difference, opt.tol_eig);
        add("overlap-unitarity", c.overlap_unitarity_residual, opt.tol_eig);
        report.checks.push_back(
            {"single-basis-compatibility", c.single_basis_compatible ? 0.0 : 1.0, 0.5,
             /*mandatory=*/false, c.single_basis_compatible,
             "informational: whether one quadruple satisfies both routes' defining "
             "properties; expected false"});
    }
    return report;
}

}  // namespace topospin
