#pragma once

// Small dense helpers shared by the library sources. Not installed.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "cstar_frames/algebra.hpp"

namespace cstar::detail {

inline Eigen::VectorXd singular_values(const CMatrix& m) {
    if (m.size() == 0) return Eigen::VectorXd();
    if (m.rows() <= 16 && m.cols() <= 16) return Eigen::JacobiSVD<CMatrix>(m).singularValues();
    return Eigen::BDCSVD<CMatrix>(m).singularValues();
}

inline double largest_singular_value(const CMatrix& m) {
    auto sv = singular_values(m);
    return sv.size() == 0 ? 0.0 : sv(0);
}

/// Smallest singular value as an injectivity measure of x -> m x; a wide
/// matrix has a kernel, so its answer is 0.
inline double smallest_singular_value_of_columns(const CMatrix& m) {
    if (m.rows() < m.cols()) return 0.0;
    auto sv = singular_values(m);
    return sv.size() == 0 ? 0.0 : sv(sv.size() - 1);
}

/// Eigenvalues of the Hermitian part, ascending.
inline Eigen::VectorXd hermitian_eigenvalues(const CMatrix& m) {
    CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

} // namespace cstar::detail
