// Dense complex vectors/matrices and the Hermitian eigendecomposition
// shared by every other module. Storage and decompositions are Eigen;
// this header fixes the conventions the rest of the library relies on:
//
//   * site 1 is the most significant bit of a basis index, spin-up is
//     bit value 0, spin-down is bit value 1;
//   * eigenvalues ascend, eigenvector phases are fixed so the first
//     largest-magnitude component is real and positive.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace topospin {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;

// Tolerances: algebraic identities, eigendecompositions, eigenvalue grouping.
inline constexpr double kTolAbs = 1e-12;
inline constexpr double kTolEig = 1e-10;
inline constexpr double kTolGroup = 1e-9;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

inline double max_abs(const Operator& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const StateVector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

inline void require_finite(const Operator& m, const std::string& what) {
    if (!m.allFinite()) throw Error(what + ": non-finite entries");
}

// Tensor product, row-major convention: the left factor carries the most
// significant index bits, so kron(A, B) puts A on the earlier sites.
inline Operator kron(const Operator& a, const Operator& b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Operator dagger(const Operator& m) {
    return m.adjoint();
}

// Conjugate-linear in the first argument.
inline Complex inner(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("inner: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    return a.dot(b);
}

inline StateVector apply(const Operator& m, const StateVector& v) {
    if (m.cols() != v.size())
        throw DimensionMismatch("apply: operator cols " + std::to_string(m.cols()) +
                                " vs vector dim " + std::to_string(v.size()));
    return m * v;
}

inline bool is_hermitian(const Operator& m, double tol = kTolAbs) {
    return m.rows() == m.cols() && max_abs(Operator(m - m.adjoint())) <= tol;
}

// Deterministic phase fix: rotate so the first component whose magnitude is
// maximal (up to 1e-12) becomes real and positive. Zero vectors pass through.
inline StateVector phase_fixed(const StateVector& v) {
    Eigen::Index pivot = -1;
    double best = 0.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double a = std::abs(v[k]);
        if (a > best + 1e-12) {
            best = a;
            pivot = k;
        }
    }
    if (pivot < 0 || best == 0.0) return v;
    return v * (std::conj(v[pivot]) / best);
}

struct EigenSystem {
    Eigen::VectorXd values;  // ascending
    Operator vectors;        // orthonormal columns, phase-fixed per column
};

inline EigenSystem hermitian_eig(const Operator& m, double tol = kTolAbs) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("hermitian_eig: matrix is not square");
    if (!is_hermitian(m, tol))
        throw NotHermitian("hermitian_eig: max |M - M^dagger| exceeds " + std::to_string(tol));
    Eigen::SelfAdjointEigenSolver<Operator> solver(m);
    if (solver.info() != Eigen::Success)
        throw Error("hermitian_eig: eigendecomposition did not converge");
    EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k)
        out.vectors.col(k) = phase_fixed(out.vectors.col(k));
    return out;
}

// Orthogonal projector onto the span of the given (orthonormal) columns.
inline Operator projector(const Operator& columns) {
    return columns * columns.adjoint();
}

}  // namespace topospin
