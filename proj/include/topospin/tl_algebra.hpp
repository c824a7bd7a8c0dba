// Temperley-Lieb generator on two spins, chain embedding, and a verifier
// for the defining relations
//
//     U_i^2 = d U_i,   U_i U_{i+-1} U_i = U_i,   U_i U_j = U_j U_i  (|i-j| >= 2)
//
// with loop value d = sqrt(2) throughout.
#pragma once

#include "topospin/numerics.hpp"

#include <numbers>
#include <string>
#include <vector>

namespace topospin {

inline constexpr double kLoopValue = std::numbers::sqrt2;
inline constexpr int kMaxChainSites = 8;

struct TLParams {
    double phi = 0.0;  // radians; q = e^{i phi}
    int eps = +1;      // +1 or -1

    void validate() const {
        if (!std::isfinite(phi)) throw Error("TLParams: phi must be finite");
        if (eps != 1 && eps != -1) throw Error("TLParams: eps must be +1 or -1");
    }
};

// The 4x4 generator on basis (uu, ud, du, dd):
//
//   (1/sqrt 2) [ 1        0       0   i q^-1
//                0        1     i eps    0
//                0     -i eps     1      0
//              -i q       0       0      1 ]
//
// Hermitian, spectrum {0, 0, sqrt2, sqrt2}.
inline Operator make_generator(const TLParams& p) {
    p.validate();
    const Complex iu(0.0, 1.0);
    const Complex q = std::exp(iu * p.phi);
    const double s = 1.0 / std::numbers::sqrt2;
    Operator u = Operator::Zero(4, 4);
    u(0, 0) = s;
    u(0, 3) = s * iu / q;
    u(1, 1) = s;
    u(1, 2) = s * iu * static_cast<double>(p.eps);
    u(2, 1) = -s * iu * static_cast<double>(p.eps);
    u(2, 2) = s;
    u(3, 0) = -s * iu * q;
    u(3, 3) = s;
    return u;
}

struct BondOutOfRange : Error {
    using Error::Error;
};

// Generator embedded at bond (i, i+1) of an m-site chain; identity elsewhere.
struct ChainOperator {
    int sites = 2;
    int bond = 1;
    Operator op;
};

inline ChainOperator embed(const TLParams& p, int sites, int bond) {
    if (sites < 2 || sites > kMaxChainSites)
        throw BondOutOfRange("embed: sites must be in [2, " +
                             std::to_string(kMaxChainSites) + "], got " +
                             std::to_string(sites));
    if (bond < 1 || bond > sites - 1)
        throw BondOutOfRange("embed: bond " + std::to_string(bond) +
                             " not in [1, " + std::to_string(sites - 1) + "]");
    const Operator u = make_generator(p);
    const auto identity = [](int n) { return Operator::Identity(1 << n, 1 << n); };
    return {sites, bond, kron(kron(identity(bond - 1), u), identity(sites - bond - 1))};
}

// One residual per (relation class, bond tuple); pass iff all <= tolerance.
struct RelationReport {
    struct Entry {
        std::string relation;    // "idempotent", "contraction", "commutation"
        std::vector<int> bonds;  // the bonds involved
        double residual = 0.0;
    };
    int sites = 2;
    std::vector<std::string> classes_checked;
    std::vector<Entry> entries;

    double max_residual() const {
        double m = 0.0;
        for (const auto& e : entries) m = std::max(m, e.residual);
        return m;
    }
    bool passed(double tol = kTolAbs) const { return max_residual() <= tol; }
};

// `perturbation` feeds the verifier a generator with that amount added to
// entry (0,1); used by the CLI self-test to prove the harness can fail.
inline RelationReport verify_relations(const TLParams& p, int sites,
                                       double perturbation = 0.0) {
    if (sites < 2 || sites > kMaxChainSites)
        throw BondOutOfRange("verify_relations: sites must be in [2, " +
                             std::to_string(kMaxChainSites) + "]");
    Operator u = make_generator(p);
    if (perturbation != 0.0) u(0, 1) += perturbation;

    const auto identity = [](int n) { return Operator::Identity(1 << n, 1 << n); };
    std::vector<Operator> bond_ops;
    for (int i = 1; i <= sites - 1; ++i)
        bond_ops.push_back(kron(kron(identity(i - 1), u), identity(sites - i - 1)));

    RelationReport report;
    report.sites = sites;
    report.classes_checked = {"idempotent"};
    if (sites >= 3) report.classes_checked.push_back("contraction");
    if (sites >= 4) report.classes_checked.push_back("commutation");

    for (int i = 0; i < sites - 1; ++i) {
        const Operator& a = bond_ops[i];
        report.entries.push_back(
            {"idempotent", {i + 1}, max_abs(Operator(a * a - kLoopValue * a))});
        for (int j = 0; j < sites - 1; ++j) {
            if (i == j) continue;
            const Operator& b = bond_ops[j];
            if (std::abs(i - j) == 1) {
                report.entries.push_back(
                    {"contraction", {i + 1, j + 1}, max_abs(Operator(a * b * a - a))});
            } else if (i < j) {
                report.entries.push_back(
                    {"commutation", {i + 1, j + 1}, max_abs(Operator(a * b - b * a))});
            }
        }
    }
    return report;
}

}  // namespace topospin
