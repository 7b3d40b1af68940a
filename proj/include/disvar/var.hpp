#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "disvar/errors.hpp"
#include "disvar/rng.hpp"
#include "disvar/series.hpp"

namespace disvar {

/// Condition-number ceiling on the regressor cross-moment matrix X'X above
/// which least squares is refused as numerically singular.
inline constexpr double kRegressorConditionLimit = 1e12;

struct VarSpec {
    int p = 1;           ///< lag order, >= 1
    bool intercept = true;
    int n = 2;           ///< number of variables (engine is generic in n)

    /// Regressors per equation: n coefficients per lag plus optional constant.
    [[nodiscard]] int k() const { return n * p + (intercept ? 1 : 0); }
};

/// Least-squares (or posterior-mean) fit of a VAR(p).
struct VarEstimate {
    VarSpec spec;
    std::vector<Eigen::MatrixXd> coeffs; ///< A_1..A_p, each n x n
    Eigen::VectorXd intercept;           ///< size n, or size 0 when disabled
    Eigen::MatrixXd sigma;               ///< n x n residual covariance, denominator T - p
    Eigen::MatrixXd residuals;           ///< (T - p) x n
    Eigen::MatrixXd regressors;          ///< (T - p) x k design matrix, shared by equations
    Eigen::MatrixXd coef_matrix;         ///< k x n, column i = equation i's coefficient vector
    Eigen::Index effective_T = 0;        ///< rows actually fit, T - p
};

/// Stacked regressor layout used everywhere: for observation t the row is
/// [y_{t-1,0..n-1}, y_{t-2,0..n-1}, ..., y_{t-p,0..n-1}, 1?]. The coefficient
/// on variable j at lag l sits at index (l-1)*n + j; the constant is last.
inline Eigen::Index coef_index(int lag, int var, int n) {
    return static_cast<Eigen::Index>((lag - 1) * n + var);
}

/// Build (X, Y) for a VAR regression. Rows start at `skip` (>= p) so that lag
/// scans can share a common estimation sample by passing skip = pmax.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> build_lag_design(const Eigen::MatrixXd& data,
                                                                    int p, bool intercept,
                                                                    Eigen::Index skip = -1) {
    if (p < 1) throw ValidationError("lag order must be >= 1");
    if (skip < 0) skip = p;
    if (skip < p) throw ValidationError("design skip must be >= lag order");
    const Eigen::Index T = data.rows();
    const Eigen::Index n = data.cols();
    const Eigen::Index rows = T - skip;
    const Eigen::Index k = static_cast<Eigen::Index>(n) * p + (intercept ? 1 : 0);
    if (rows < 1) throw ValidationError("insufficient observations for lag design");

    Eigen::MatrixXd X(rows, k);
    Eigen::MatrixXd Y(rows, n);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index t = skip + r;
        for (int l = 1; l <= p; ++l) {
            X.block(r, static_cast<Eigen::Index>(l - 1) * n, 1, n) = data.row(t - l);
        }
        if (intercept) X(r, k - 1) = 1.0;
        Y.row(r) = data.row(t);
    }
    return {std::move(X), std::move(Y)};
}

namespace detail {

/// Eigenvalue-based condition check; throws when X'X is unusable.
inline void check_cross_moment(const Eigen::MatrixXd& xtx) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(xtx);
    if (es.info() != Eigen::Success) {
        throw ValidationError("numerically singular regressor cross-moment");
    }
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > kRegressorConditionLimit) {
        throw ValidationError("numerically singular regressor cross-moment (condition > 1e12)");
    }
}

} // namespace detail

/// Equation-by-equation OLS. sigma uses denominator T - p.
inline VarEstimate ols_var(const Eigen::MatrixXd& data, VarSpec spec) {
    if (spec.p < 1) throw ValidationError("lag order must be >= 1");
    if (data.cols() != spec.n) throw ValidationError("data has wrong number of variables");
    const Eigen::Index T = data.rows();
    const Eigen::Index k = spec.k();
    if (T - spec.p < k + 2) {
        throw ValidationError("insufficient observations: T - p = " +
                              std::to_string(T - spec.p) + " < k + 2 = " + std::to_string(k + 2));
    }

    auto [X, Y] = build_lag_design(data, spec.p, spec.intercept);
    const Eigen::MatrixXd xtx = X.transpose() * X;
    detail::check_cross_moment(xtx);

    Eigen::LDLT<Eigen::MatrixXd> solver(xtx);
    Eigen::MatrixXd beta = solver.solve(X.transpose() * Y); // k x n
    Eigen::MatrixXd resid = Y - X * beta;
    const Eigen::Index Teff = X.rows();

    VarEstimate est;
    est.spec = spec;
    est.coef_matrix = beta;
    est.coeffs.resize(spec.p);
    for (int l = 1; l <= spec.p; ++l) {
        Eigen::MatrixXd A(spec.n, spec.n);
        for (int i = 0; i < spec.n; ++i) {
            for (int j = 0; j < spec.n; ++j) A(i, j) = beta(coef_index(l, j, spec.n), i);
        }
        est.coeffs[static_cast<std::size_t>(l - 1)] = std::move(A);
    }
    if (spec.intercept) {
        est.intercept = beta.row(k - 1).transpose();
    } else {
        est.intercept = Eigen::VectorXd();
    }
    Eigen::MatrixXd sigma = (resid.transpose() * resid) / static_cast<double>(Teff);
    est.sigma = 0.5 * (sigma + sigma.transpose());
    est.residuals = std::move(resid);
    est.regressors = std::move(X);
    est.effective_T = Teff;
    return est;
}

inline VarEstimate ols_var(const AlignedMatrix& data, VarSpec spec) {
    return ols_var(data.data, spec);
}

/// HC0 sandwich standard errors for one equation:
/// sqrt(diag((X'X)^-1 X' diag(e^2) X (X'X)^-1)).
inline Eigen::VectorXd hc0_se(const Eigen::MatrixXd& X, const Eigen::VectorXd& e) {
    if (X.rows() != e.size()) throw ValidationError("residual length does not match design rows");
    const Eigen::MatrixXd xtx = X.transpose() * X;
    detail::check_cross_moment(xtx);
    Eigen::LDLT<Eigen::MatrixXd> solver(xtx);
    const Eigen::MatrixXd bread = solver.solve(Eigen::MatrixXd::Identity(X.cols(), X.cols()));
    const Eigen::MatrixXd meat = X.transpose() * e.array().square().matrix().asDiagonal() * X;
    const Eigen::MatrixXd sandwich = bread * meat * bread;
    return sandwich.diagonal().cwiseMax(0.0).cwiseSqrt();
}

/// HC0 standard errors for every equation of a fitted VAR; column i of the
/// result aligns with column i of est.coef_matrix.
inline Eigen::MatrixXd hc_se(const VarEstimate& est) {
    if (est.regressors.rows() == 0) throw ValidationError("estimate carries no regressor matrix");
    Eigen::MatrixXd out(est.coef_matrix.rows(), est.coef_matrix.cols());
    for (Eigen::Index i = 0; i < est.coef_matrix.cols(); ++i) {
        out.col(i) = hc0_se(est.regressors, est.residuals.col(i));
    }
    return out;
}

/// Schwarz criterion scan over lag orders 1..pmax on a common sample (all
/// candidates are fit on the T - pmax trailing observations so their
/// likelihoods are comparable).
struct BicScan {
    int selected = 1;
    std::vector<double> bic; ///< bic[p-1] for p = 1..pmax
};

inline BicScan bic_scan(const Eigen::MatrixXd& data, int pmax, bool intercept) {
    if (pmax < 1) throw ValidationError("pmax must be >= 1");
    const Eigen::Index n = data.cols();
    const Eigen::Index T = data.rows();
    const Eigen::Index kmax = n * pmax + (intercept ? 1 : 0);
    if (T - pmax < kmax + 2) {
        throw ValidationError("insufficient observations for lag scan up to pmax = " +
                              std::to_string(pmax));
    }
    const double Teff = static_cast<double>(T - pmax);

    BicScan scan;
    scan.bic.resize(static_cast<std::size_t>(pmax));
    double best = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= pmax; ++p) {
        auto [X, Y] = build_lag_design(data, p, intercept, pmax);
        detail::check_cross_moment(X.transpose() * X);
        Eigen::LDLT<Eigen::MatrixXd> solver(X.transpose() * X);
        Eigen::MatrixXd resid = Y - X * solver.solve(X.transpose() * Y);
        Eigen::MatrixXd sig = (resid.transpose() * resid) / Teff;
        const double det = sig.determinant();
        const double params = static_cast<double>(n) * (static_cast<double>(n) * p +
                                                        (intercept ? 1 : 0));
        const double value = det > 0.0
                                 ? std::log(det) + std::log(Teff) / Teff * params
                                 : std::numeric_limits<double>::infinity();
        scan.bic[static_cast<std::size_t>(p - 1)] = value;
        if (value < best) { // strict: ties resolve toward the smaller p
            best = value;
            scan.selected = p;
        }
    }
    return scan;
}

inline int bic_select(const Eigen::MatrixXd& data, int pmax, bool intercept) {
    return bic_scan(data, pmax, intercept).selected;
}

inline int bic_select(const AlignedMatrix& data, int pmax, bool intercept) {
    return bic_select(data.data, pmax, intercept);
}

/// np x np companion matrix [A_1 ... A_p; I 0].
inline Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& coeffs) {
    if (coeffs.empty()) throw ValidationError("companion matrix needs at least one lag");
    const Eigen::Index n = coeffs.front().rows();
    const Eigen::Index p = static_cast<Eigen::Index>(coeffs.size());
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n * p, n * p);
    for (Eigen::Index l = 0; l < p; ++l) {
        if (coeffs[static_cast<std::size_t>(l)].rows() != n ||
            coeffs[static_cast<std::size_t>(l)].cols() != n) {
            throw ValidationError("lag coefficient matrices must share dimensions");
        }
        C.block(0, l * n, n, n) = coeffs[static_cast<std::size_t>(l)];
    }
    if (p > 1) C.block(n, 0, n * (p - 1), n * (p - 1)).setIdentity();
    return C;
}

/// Largest eigenvalue modulus of the companion matrix. Computed with a full
/// QR eigensolve rather than power iteration: VAR companion matrices routinely
/// have a complex-conjugate dominant pair, on which plain power iteration
/// never settles.
inline double spectral_radius(const std::vector<Eigen::MatrixXd>& coeffs) {
    const Eigen::MatrixXd C = companion_matrix(coeffs);
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) {
        throw Error("spectral radius eigensolve did not converge");
    }
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline double spectral_radius(const VarEstimate& est) { return spectral_radius(est.coeffs); }

/// Simulate T rows of a Gaussian VAR with the given lag matrices, optional
/// intercept (size n or 0), and lower-triangular noise impact. A burn-in run
/// from a zero start washes out the transient.
inline Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& coeffs,
                                    const Eigen::VectorXd& intercept,
                                    const Eigen::MatrixXd& noise_impact, std::size_t T,
                                    std::uint64_t seed, std::size_t burnin = 100) {
    if (coeffs.empty()) throw ValidationError("simulate_var needs at least one lag matrix");
    const Eigen::Index n = coeffs.front().rows();
    const std::size_t p = coeffs.size();
    if (noise_impact.rows() != n || noise_impact.cols() != n) {
        throw ValidationError("noise impact matrix has wrong dimensions");
    }
    if (intercept.size() != 0 && intercept.size() != n) {
        throw ValidationError("intercept vector has wrong dimension");
    }
    if (T < 1) throw ValidationError("simulate_var: T must be >= 1");

    Rng rng(seed);
    const std::size_t total = T + burnin + p;
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(total), n);
    Eigen::VectorXd eps(n);
    for (std::size_t t = p; t < total; ++t) {
        for (Eigen::Index j = 0; j < n; ++j) eps(j) = rng.normal();
        Eigen::VectorXd next = noise_impact * eps;
        if (intercept.size() == n) next += intercept;
        for (std::size_t l = 1; l <= p; ++l) {
            next += coeffs[l - 1] * y.row(static_cast<Eigen::Index>(t - l)).transpose();
        }
        y.row(static_cast<Eigen::Index>(t)) = next.transpose();
    }
    return y.bottomRows(static_cast<Eigen::Index>(T));
}

} // namespace disvar
