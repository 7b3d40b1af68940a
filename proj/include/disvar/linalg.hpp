#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "disvar/errors.hpp"

namespace disvar {

/// Lower Cholesky factor of a symmetric positive-definite matrix. Implemented
/// by hand so a failure can name the offending leading minor (1-based).
inline Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw ValidationError("cholesky needs a square matrix");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
        throw ValidationError("cholesky needs a symmetric matrix");
    }
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double diag = m(j, j);
        for (Eigen::Index k = 0; k < j; ++k) diag -= L(j, k) * L(j, k);
        if (!(diag > 0.0)) {
            throw ValidationError("not positive-definite: leading minor " + std::to_string(j + 1) +
                                  " fails");
        }
        L(j, j) = std::sqrt(diag);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            double off = m(i, j);
            for (Eigen::Index k = 0; k < j; ++k) off -= L(i, k) * L(j, k);
            L(i, j) = off / L(j, j);
        }
    }
    return L;
}

/// Symmetric square root of a positive-semidefinite matrix (eigenvalue
/// clamping absorbs tiny negative drift). Returns S with S * S^T = m.
inline Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * lambda.asDiagonal();
}

/// Empirical quantile with linear interpolation between order statistics.
/// `sorted` must be ascending and nonempty; q in [0, 1].
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw ValidationError("quantile of empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace disvar
