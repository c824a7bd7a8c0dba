// JSON serialization for the library's value types (nlohmann::json).
// Complex numbers are emitted as [re, im] pairs; matrices as row arrays.
#pragma once

#include "topospin/cupcap.hpp"
#include "topospin/diagram.hpp"
#include "topospin/doublewell.hpp"
#include "topospin/dynamics.hpp"
#include "topospin/hamiltonian.hpp"
#include "topospin/tl_algebra.hpp"
#include "topospin/topo_basis.hpp"
#include "topospin/verification.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace topospin {

using json = nlohmann::json;

inline json to_json_pair(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline json to_json_flat(const Operator& m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(to_json_pair(m(r, c)));
    return data;
}

inline json to_json_rows(const Operator& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json_pair(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void to_json(json& j, const TLParams& p) {
    j = json{{"phi", p.phi}, {"eps", p.eps}};
}

inline void to_json(json& j, const ModelParams& mp) {
    j = json{{"J", mp.J}, {"delta", mp.delta}, {"phi", mp.phi}, {"eps", mp.eps},
             {"hbar", mp.hbar}};
}

inline void to_json(json& j, const WellParams& w) {
    j = json{{"m", w.m}, {"L", w.L}, {"a", w.a}, {"V0", w.V0}, {"hbar", w.hbar}};
}

inline void to_json(json& j, const WellMap& m) {
    j = json{{"xi", m.xi}, {"J", m.J}, {"delta", m.delta}, {"delta_freq", m.delta_freq},
             {"tau", m.tau}};
}

inline void to_json(json& j, const Splitting& s) {
    j = json{{"omega_plus", s.omega_plus}, {"omega_minus", s.omega_minus},
             {"delta_freq", s.delta_freq}};
}

inline void to_json(json& j, const Spectrum::Level& l) {
    j = json{{"value", l.value}, {"multiplicity", l.multiplicity}};
}

inline void to_json(json& j, const Spectrum& sp) {
    j = json{{"levels", sp.levels}, {"dimension", sp.dimension()}};
}

inline void to_json(json& j, const RelationReport::Entry& e) {
    j = json{{"relation", e.relation}, {"bonds", e.bonds}, {"residual", e.residual}};
}

inline void to_json(json& j, const RelationReport& r) {
    j = json{{"sites", r.sites}, {"classes_checked", r.classes_checked},
             {"entries", r.entries}, {"max_residual", r.max_residual()}};
}

inline void to_json(json& j, const EvalResult& r) {
    j = json{{"kind", std::string(to_string(r.kind))},
             {"rows", r.data.rows()},
             {"cols", r.data.cols()},
             {"dim", r.kind == EvalResult::Kind::costate ? r.data.cols() : r.data.rows()},
             {"in_sites", sites_of(r.in)},
             {"out_sites", sites_of(r.out)},
             {"data", to_json_flat(r.data)}};
}

inline void to_json(json& j, const TwoDRep& rep) {
    const auto mat2 = [](const Eigen::Matrix2d& m) {
        return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
    };
    j = json{{"uA", mat2(rep.uA)},
             {"uB", mat2(rep.uB)},
             {"imag_residual", rep.imag_residual},
             {"relation_residuals",
              json{{"uA_idempotent", rep.uA_idempotent},
                   {"uB_idempotent", rep.uB_idempotent},
                   {"uAuBuA", rep.uAuBuA},
                   {"uBuAuB", rep.uBuAuB}}}};
}

inline void to_json(json& j, const ConsistencyReport::RepCheck& c) {
    j = json{{"label", c.label}, {"rep", c.rep},
             {"reference_deviation", c.reference_deviation}};
}

inline void to_json(json& j, const ConsistencyReport& c) {
    j = json{{"params", c.params},
             {"overlap", to_json_rows(c.overlap)},
             {"overlap_unitarity_residual", c.overlap_unitarity_residual},
             {"projector_difference", c.projector_difference},
             {"reps", c.reps},
             {"spectral_eigen_residual", c.spectral_eigen_residual},
             {"spectral_gram_residual", c.spectral_gram_residual},
             {"flags",
              json{{"graphical_matches_reference", c.graphical_matches_reference},
                   {"spectral_matches_eigenrelations", c.spectral_matches_eigenrelations},
                   {"routes_span_same_subspace", c.routes_span_same_subspace},
                   {"single_basis_compatible", c.single_basis_compatible}}}};
}

inline void to_json(json& j, const CheckResult& c) {
    j = json{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance},
             {"mandatory", c.mandatory}, {"passed", c.passed}, {"note", c.note}};
}

inline void to_json(json& j, const VerifyReport& r) {
    j = json{{"params", r.params},
             {"perturbation", r.perturbation},
             {"checks", r.checks},
             {"consistency", r.consistency},
             {"all_mandatory_passed", r.all_mandatory_passed()}};
}

inline void to_json(json& j, const ZenoRun& z) {
    j = json{{"n", z.n}, {"interval", z.interval}, {"survival_exact", z.survival_exact},
             {"survival_analytic", z.survival_analytic}, {"survival_limit", z.survival_limit}};
}

inline void to_json(json& j, const EvolutionTrace& tr) {
    j = json{{"times", tr.times}, {"p_e1", tr.p_e1}, {"p_e3", tr.p_e3}, {"leak", tr.leak}};
}

inline void to_json(json& j, const WellTable::Row& row) {
    j = json{{"V0", row.V0}, {"delta", row.delta}, {"tau", row.tau},
             {"annotation", row.independent ? "independent wells" : ""}};
}

inline void to_json(json& j, const WellTable& t) {
    j = json{{"rows", t.rows}};
}

}  // namespace topospin
