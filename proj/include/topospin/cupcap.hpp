// The four two-spin cup states and the weighted rank-one operators they
// generate. The type-1 phases are the range/kernel eigenvectors of the
// generator's corner block, which is what makes
//
//     rank_one(d1) + rank_one(d2) == make_generator(p)
//
// an exact identity for every (phi, eps). A closed same-type cap-over-cup
// loop evaluates to d = sqrt(2); cross-type loops vanish.
#pragma once

#include "topospin/numerics.hpp"
#include "topospin/tl_algebra.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace topospin {

enum class CupType { d1, d2, o1, o2 };

inline constexpr std::array<CupType, 4> kAllCupTypes{CupType::d1, CupType::d2,
                                                     CupType::o1, CupType::o2};

inline std::string_view to_string(CupType t) {
    switch (t) {
        case CupType::d1: return "d1";
        case CupType::d2: return "d2";
        case CupType::o1: return "o1";
        case CupType::o2: return "o2";
    }
    return "?";
}

inline std::optional<CupType> cup_type_from(std::string_view s) {
    for (CupType t : kAllCupTypes)
        if (to_string(t) == s) return t;
    return std::nullopt;
}

// Normalized two-spin state on basis (uu, ud, du, dd). The diagram element
// itself carries an extra sqrt(d) weight; see rank_one and the DSL evaluator.
//
//   d1: (1, 0, 0, -i e^{i phi}) / sqrt2      o1: (1, 0, 0, +i e^{i phi}) / sqrt2
//   d2: (0, 1, -i eps, 0) / sqrt2            o2: (0, 1, +i eps, 0) / sqrt2
//
// d1/d2 span the generator's eigenvalue-d subspace, o1/o2 its kernel; the
// four together are orthonormal for every (phi, eps).
inline StateVector cup_state(CupType t, const TLParams& p) {
    p.validate();
    const Complex iu(0.0, 1.0);
    const double s = 1.0 / std::numbers::sqrt2;
    StateVector v = StateVector::Zero(4);
    switch (t) {
        case CupType::d1:
            v[0] = s;
            v[3] = -s * iu * std::exp(iu * p.phi);
            break;
        case CupType::o1:
            v[0] = s;
            v[3] = s * iu * std::exp(iu * p.phi);
            break;
        case CupType::d2:
            v[1] = s;
            v[2] = -s * iu * static_cast<double>(p.eps);
            break;
        case CupType::o2:
            v[1] = s;
            v[2] = s * iu * static_cast<double>(p.eps);
            break;
    }
    return v;
}

// d * |psi_t><psi_t| -- the cup-over-cap diagram with both sqrt(d) weights.
inline Operator rank_one(CupType t, const TLParams& p) {
    const StateVector v = cup_state(t, p);
    return kLoopValue * (v * v.adjoint());
}

}  // namespace topospin
