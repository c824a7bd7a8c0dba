// Four-state topological subspace built by two independent routes.
//
// Graphical route: per cup family, start from the side-by-side cup product
// state, Gram-Schmidt the bond-2 generator against it, and order the pair so
// the range of U_12 comes first. Projecting U_12 and U_23 onto such a pair
// yields the reference 2x2 representation uA = diag(d, 0), uB = ones/d for
// both families.
//
// Spectral route: invert the eigenstate combinations. The Hamiltonian
// eigenvectors at the four nonzero levels J(1+-Delta), 4J(1+-Delta) are
// E1+-, E2+-; the basis is e1 = (E1+ + E1-)/sqrt2, e3 = (E1+ - E1-)/sqrt2 and
// likewise e2, e4 from E2+-.
//
// The two routes span the same 4-dimensional subspace but no single quadruple
// satisfies both routes' defining properties; consistency_report measures the
// overlap instead of collapsing the routes.
#pragma once

#include "topospin/hamiltonian.hpp"
#include "topospin/tl_algebra.hpp"

#include <array>
#include <string>
#include <vector>

namespace topospin {

struct DegenerateGramSchmidt : Error {
    using Error::Error;
};

enum class CupFamily { d, o };

inline std::string_view to_string(CupFamily f) {
    return f == CupFamily::d ? "d" : "o";
}

struct BasisPair {
    StateVector v1, v2;  // 16-dim, orthonormal
};

namespace detail {

inline double generator_expectation(const Operator& u, const StateVector& v) {
    return std::real(inner(v, StateVector(u * v)));
}

}  // namespace detail

inline BasisPair graphical_basis(const TLParams& p, CupFamily family) {
    p.validate();
    const CupType t1 = family == CupFamily::d ? CupType::d1 : CupType::o1;
    const StateVector chi = cup_state(t1, p);
    StateVector v1 = kron(chi, chi);

    const Operator u23 = embed(p, 4, 2).op;
    StateVector w = u23 * v1;
    w -= inner(v1, w) * v1;
    const double norm = w.norm();
    if (norm < kTolAbs)
        throw DegenerateGramSchmidt("bond-2 generator leaves the product state invariant");
    StateVector v2 = w / norm;

    // Range of U_12 first: makes both families project to the same 2x2 rep.
    // The pair keeps the Gram-Schmidt phases; re-fixing them per vector would
    // scramble the relative phase and the off-diagonal projections with it.
    const Operator u12 = embed(p, 4, 1).op;
    if (detail::generator_expectation(u12, v2) > detail::generator_expectation(u12, v1))
        std::swap(v1, v2);
    return {v1, v2};
}

// 2x2 projections of the bond generators onto an orthonormal pair, with the
// residuals of the four 2D Temperley-Lieb relations.
struct TwoDRep {
    Eigen::Matrix2d uA;  // <v_i| U_12 |v_j>
    Eigen::Matrix2d uB;  // <v_i| U_23 |v_j>
    double imag_residual = 0.0;  // largest imaginary part dropped
    double uA_idempotent = 0.0;  // |uA^2 - d uA|
    double uB_idempotent = 0.0;
    double uAuBuA = 0.0;  // |uA uB uA - uA|
    double uBuAuB = 0.0;

    double max_relation_residual() const {
        return std::max(std::max(uA_idempotent, uB_idempotent), std::max(uAuBuA, uBuAuB));
    }
};

inline TwoDRep two_d_rep(const StateVector& v1, const StateVector& v2, const TLParams& p) {
    const Operator u12 = embed(p, 4, 1).op;
    const Operator u23 = embed(p, 4, 2).op;
    const std::array<const StateVector*, 2> v{&v1, &v2};

    TwoDRep rep;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const Complex a = inner(*v[i], StateVector(u12 * *v[j]));
            const Complex b = inner(*v[i], StateVector(u23 * *v[j]));
            rep.uA(i, j) = a.real();
            rep.uB(i, j) = b.real();
            rep.imag_residual =
                std::max(rep.imag_residual, std::max(std::abs(a.imag()), std::abs(b.imag())));
        }
    }
    const auto res = [](const Eigen::Matrix2d& m) {
        return m.cwiseAbs().maxCoeff();
    };
    rep.uA_idempotent = res(rep.uA * rep.uA - kLoopValue * rep.uA);
    rep.uB_idempotent = res(rep.uB * rep.uB - kLoopValue * rep.uB);
    rep.uAuBuA = res(rep.uA * rep.uB * rep.uA - rep.uA);
    rep.uBuAuB = res(rep.uB * rep.uA * rep.uB - rep.uB);
    return rep;
}

// The representation both graphical families reproduce.
inline TwoDRep reference_two_d_rep() {
    TwoDRep rep;
    rep.uA << kLoopValue, 0.0, 0.0, 0.0;
    const double inv = 1.0 / kLoopValue;
    rep.uB << inv, inv, inv, inv;
    return rep;
}

inline double reference_deviation(const TwoDRep& rep) {
    const TwoDRep ref = reference_two_d_rep();
    const double da = (rep.uA - ref.uA).cwiseAbs().maxCoeff();
    const double db = (rep.uB - ref.uB).cwiseAbs().maxCoeff();
    return std::max(std::max(da, db), rep.imag_residual);
}

enum class BasisRoute { graphical, spectral };

inline std::string_view to_string(BasisRoute r) {
    return r == BasisRoute::graphical ? "graphical" : "spectral";
}

struct TopoBasis {
    StateVector e1, e2, e3, e4;
    BasisRoute route = BasisRoute::spectral;
    ModelParams params;

    Operator matrix() const {
        Operator m(e1.size(), 4);
        m.col(0) = e1;
        m.col(1) = e2;
        m.col(2) = e3;
        m.col(3) = e4;
        return m;
    }
    Operator gram() const {
        const Operator m = matrix();
        return m.adjoint() * m;
    }
    Operator span_projector() const { return projector(matrix()); }
};

namespace detail {

// Eigenvector of h at the given simple eigenvalue; targets must be pairwise
// separated by more than kTolGroup (checked by the caller).
inline StateVector eigenvector_at(const EigenSystem& es, double target) {
    int hit = -1;
    for (int k = 0; k < es.values.size(); ++k) {
        if (std::abs(es.values[k] - target) <= kTolGroup) {
            if (hit >= 0)
                throw DegenerateSpectrum("eigenvalue " + std::to_string(target) +
                                         " is not simple");
            hit = k;
        }
    }
    if (hit < 0)
        throw DegenerateSpectrum("no eigenvalue near " + std::to_string(target));
    return es.vectors.col(hit);
}

}  // namespace detail

inline TopoBasis spectral_basis(const ModelParams& mp) {
    mp.validate();
    const double l1p = mp.J * (1.0 + mp.delta);
    const double l1m = mp.J * (1.0 - mp.delta);
    const double l2p = 4.0 * mp.J * (1.0 + mp.delta);
    const double l2m = 4.0 * mp.J * (1.0 - mp.delta);
    const std::array<double, 5> lv{0.0, l1p, l1m, l2p, l2m};
    for (std::size_t i = 0; i < lv.size(); ++i)
        for (std::size_t j = i + 1; j < lv.size(); ++j)
            if (std::abs(lv[i] - lv[j]) <= kTolGroup)
                throw DegenerateSpectrum(
                    "nonzero levels collide at delta=" + std::to_string(mp.delta) +
                    "; eigenstate labels undefined");

    const EigenSystem es = hermitian_eig(build_h(mp));
    const StateVector e1p = detail::eigenvector_at(es, l1p);
    const StateVector e1m = detail::eigenvector_at(es, l1m);
    const StateVector e2p = detail::eigenvector_at(es, l2p);
    const StateVector e2m = detail::eigenvector_at(es, l2m);

    const double s = 1.0 / kLoopValue;
    TopoBasis b;
    b.e1 = s * (e1p + e1m);
    b.e3 = s * (e1p - e1m);
    b.e2 = s * (e2p + e2m);
    b.e4 = s * (e2p - e2m);
    b.route = BasisRoute::spectral;
    b.params = mp;
    return b;
}

inline TopoBasis graphical_topo_basis(const TLParams& p) {
    const BasisPair dfam = graphical_basis(p, CupFamily::d);
    const BasisPair ofam = graphical_basis(p, CupFamily::o);
    TopoBasis b;
    b.e1 = dfam.v1;
    b.e2 = dfam.v2;
    b.e3 = ofam.v1;
    b.e4 = ofam.v2;
    b.route = BasisRoute::graphical;
    b.params.phi = p.phi;
    b.params.eps = p.eps;
    return b;
}

struct ConsistencyReport {
    ModelParams params;

    Operator overlap;  // 4x4, graphical columns against spectral columns
    double overlap_unitarity_residual = 0.0;
    double projector_difference = 0.0;

    struct RepCheck {
        std::string label;
        TwoDRep rep;
        double reference_deviation = 0.0;
    };
    std::vector<RepCheck> reps;  // graphical families first, then spectral pairs

    double spectral_eigen_residual = 0.0;  // worst ||H v - lambda v||_max over E1+-, E2+-
    double spectral_gram_residual = 0.0;

    bool graphical_matches_reference = false;
    bool spectral_matches_eigenrelations = false;
    bool routes_span_same_subspace = false;
    // Whether one quadruple satisfies both routes' defining properties at
    // once. Informational: expected false, never a failure.
    bool single_basis_compatible = false;
};

inline ConsistencyReport consistency_report(const TLParams& p, const ModelParams& mp) {
    ConsistencyReport rpt;
    rpt.params = mp;

    const TopoBasis graph = graphical_topo_basis(p);
    const TopoBasis spectral = spectral_basis(mp);

    rpt.overlap = graph.matrix().adjoint() * spectral.matrix();
    rpt.overlap_unitarity_residual =
        max_abs(Operator(rpt.overlap.adjoint() * rpt.overlap - Operator::Identity(4, 4)));
    rpt.projector_difference =
        max_abs(Operator(graph.span_projector() - spectral.span_projector()));

    const auto add_rep = [&](std::string label, const StateVector& a, const StateVector& b,
                             const TLParams& tp) {
        ConsistencyReport::RepCheck c;
        c.label = std::move(label);
        c.rep = two_d_rep(a, b, tp);
        c.reference_deviation = reference_deviation(c.rep);
        rpt.reps.push_back(std::move(c));
    };
    add_rep("graphical:d", graph.e1, graph.e2, p);
    add_rep("graphical:o", graph.e3, graph.e4, p);
    add_rep("spectral:e1,e2", spectral.e1, spectral.e2, mp.tl());
    add_rep("spectral:e1,e3", spectral.e1, spectral.e3, mp.tl());

    rpt.graphical_matches_reference = rpt.reps[0].reference_deviation <= kTolAbs &&
                                      rpt.reps[1].reference_deviation <= kTolAbs;

    const Operator h = build_h(mp);
    const double s = 1.0 / kLoopValue;
    const std::array<std::pair<StateVector, double>, 4> eigenpairs{
        std::pair{StateVector(s * (spectral.e1 + spectral.e3)), mp.J * (1.0 + mp.delta)},
        std::pair{StateVector(s * (spectral.e1 - spectral.e3)), mp.J * (1.0 - mp.delta)},
        std::pair{StateVector(s * (spectral.e2 + spectral.e4)), 4.0 * mp.J * (1.0 + mp.delta)},
        std::pair{StateVector(s * (spectral.e2 - spectral.e4)), 4.0 * mp.J * (1.0 - mp.delta)}};
    for (const auto& [v, lambda] : eigenpairs)
        rpt.spectral_eigen_residual =
            std::max(rpt.spectral_eigen_residual, max_abs(StateVector(h * v - lambda * v)));
    rpt.spectral_gram_residual =
        max_abs(Operator(spectral.gram() - Operator::Identity(4, 4)));

    rpt.spectral_matches_eigenrelations =
        rpt.spectral_eigen_residual <= kTolEig && rpt.spectral_gram_residual <= kTolAbs;
    rpt.routes_span_same_subspace = rpt.projector_difference <= kTolEig;
    const bool spectral_matches_reference =
        rpt.reps[2].reference_deviation <= kTolAbs || rpt.reps[3].reference_deviation <= kTolAbs;
    rpt.single_basis_compatible =
        spectral_matches_reference && rpt.spectral_matches_eigenrelations;
    return rpt;
}

inline ConsistencyReport consistency_report(const ModelParams& mp) {
    return consistency_report(mp.tl(), mp);
}

}  // namespace topospin
