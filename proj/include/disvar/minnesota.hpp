#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "disvar/errors.hpp"
#include "disvar/var.hpp"

namespace disvar {

/// Litterman-style shrinkage hyperparameters. `scales` may be left empty, in
/// which case they are fit from the data as univariate AR(1) residual SDs.
struct MinnesotaHyper {
    double delta = 0.0;    ///< prior mean on each variable's own first lag
    double lambda1 = 0.2;  ///< overall tightness, > 0
    double lambda2 = 0.5;  ///< cross-variable weight, in (0, 1]
    double lambda3 = 1.0;  ///< lag-decay exponent, >= 0
    double lambda4 = 100.0; ///< intercept looseness, > 0
    std::vector<double> scales; ///< s_1..s_n; empty = derive from the data

    void validate() const {
        if (!(lambda1 > 0.0)) throw ValidationError("non-positive hyperparameter lambda1");
        if (!(lambda2 > 0.0 && lambda2 <= 1.0)) {
            throw ValidationError("hyperparameter lambda2 must lie in (0, 1]");
        }
        if (!(lambda3 >= 0.0)) throw ValidationError("hyperparameter lambda3 must be >= 0");
        if (!(lambda4 > 0.0)) throw ValidationError("non-positive hyperparameter lambda4");
        for (double s : scales) {
            if (!(s > 0.0)) throw ValidationError("non-positive scale in hyperparameters");
        }
    }
};

/// Gaussian posterior for one equation's coefficient vector, with the residual
/// variance that scaled the likelihood.
struct PosteriorDensity {
    Eigen::VectorXd mean;       ///< length k
    Eigen::MatrixXd covariance; ///< k x k, symmetric PSD
    double sigma_ii = 0.0;      ///< fixed residual variance used for scaling
};

/// Bundle returned by minnesota_posterior: per-equation posteriors plus the
/// OLS fit whose sigma stays fixed throughout.
struct MinnesotaResult {
    VarEstimate ols;
    std::vector<PosteriorDensity> equations;
    Eigen::MatrixXd sigma;      ///< the fixed OLS residual covariance
    std::vector<double> scales; ///< the s_i actually used
};

/// Residual standard deviations of univariate AR(1) fits (with intercept),
/// one per column — the classic Minnesota scale estimates.
inline std::vector<double> ar1_residual_scales(const Eigen::MatrixXd& data) {
    const Eigen::Index T = data.rows();
    const Eigen::Index n = data.cols();
    if (T < 5) throw ValidationError("insufficient observations for AR(1) scales");
    std::vector<double> scales(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::MatrixXd X(T - 1, 2);
        X.col(0) = data.col(j).head(T - 1);
        X.col(1).setOnes();
        Eigen::VectorXd y = data.col(j).tail(T - 1);
        detail::check_cross_moment(X.transpose() * X);
        Eigen::LDLT<Eigen::MatrixXd> solver(X.transpose() * X);
        Eigen::VectorXd beta = solver.solve(X.transpose() * y);
        Eigen::VectorXd e = y - X * beta;
        const double ss = e.squaredNorm() / static_cast<double>(T - 1 - 2);
        const double s = std::sqrt(ss);
        if (!(s > 0.0)) {
            throw ValidationError("constant series: cannot form AR(1) scale for variable " +
                                  std::to_string(j));
        }
        scales[static_cast<std::size_t>(j)] = s;
    }
    return scales;
}

/// Diagonal prior standard deviations for equation i under the stated layout
/// (lag-major regressors, constant last).
inline Eigen::VectorXd minnesota_prior_sd(int equation, VarSpec spec, const MinnesotaHyper& hyper,
                                          const std::vector<double>& scales) {
    Eigen::VectorXd sd(spec.k());
    const double s_i = scales[static_cast<std::size_t>(equation)];
    for (int l = 1; l <= spec.p; ++l) {
        const double decay = std::pow(static_cast<double>(l), hyper.lambda3);
        for (int j = 0; j < spec.n; ++j) {
            const double s_j = scales[static_cast<std::size_t>(j)];
            sd(coef_index(l, j, spec.n)) =
                (j == equation) ? hyper.lambda1 / decay
                                : hyper.lambda1 * hyper.lambda2 * (s_i / s_j) / decay;
        }
    }
    if (spec.intercept) sd(spec.k() - 1) = hyper.lambda1 * hyper.lambda4 * s_i;
    return sd;
}

/// Prior mean for equation i: delta on the variable's own first lag, zero
/// everywhere else.
inline Eigen::VectorXd minnesota_prior_mean(int equation, VarSpec spec,
                                            const MinnesotaHyper& hyper) {
    Eigen::VectorXd b0 = Eigen::VectorXd::Zero(spec.k());
    b0(coef_index(1, equation, spec.n)) = hyper.delta;
    return b0;
}

/// Equation-by-equation conjugate Normal update with sigma held fixed at the
/// OLS estimate:
///   posterior precision  P = X'X / sigma_ii + Omega0^-1
///   posterior mean         = P^-1 (X'y / sigma_ii + Omega0^-1 b0)
inline MinnesotaResult minnesota_posterior(const Eigen::MatrixXd& data, VarSpec spec,
                                           MinnesotaHyper hyper) {
    hyper.validate();
    MinnesotaResult result;
    result.ols = ols_var(data, spec);
    result.sigma = result.ols.sigma;
    result.scales = hyper.scales.empty() ? ar1_residual_scales(data) : hyper.scales;
    if (result.scales.size() != static_cast<std::size_t>(spec.n)) {
        throw ValidationError("hyperparameter scales have wrong length");
    }
    for (double s : result.scales) {
        if (!(s > 0.0)) throw ValidationError("non-positive scale in hyperparameters");
    }

    const Eigen::MatrixXd& X = result.ols.regressors;
    const Eigen::MatrixXd xtx = X.transpose() * X;
    const Eigen::MatrixXd Y = build_lag_design(data, spec.p, spec.intercept).second;

    result.equations.reserve(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) {
        const double sigma_ii = result.sigma(i, i);
        if (!(sigma_ii > 0.0)) {
            throw ValidationError("residual variance is not positive for equation " +
                                  std::to_string(i));
        }
        const Eigen::VectorXd sd = minnesota_prior_sd(i, spec, hyper, result.scales);
        const Eigen::VectorXd b0 = minnesota_prior_mean(i, spec, hyper);
        const Eigen::VectorXd omega_inv = sd.array().square().inverse().matrix();

        Eigen::MatrixXd precision = xtx / sigma_ii;
        precision.diagonal() += omega_inv;
        Eigen::LDLT<Eigen::MatrixXd> solver(precision);
        if (solver.info() != Eigen::Success || !solver.isPositive()) {
            throw ValidationError("singular posterior precision for equation " +
                                  std::to_string(i));
        }
        const Eigen::VectorXd rhs =
            X.transpose() * Y.col(i) / sigma_ii + omega_inv.cwiseProduct(b0);

        PosteriorDensity density;
        density.mean = solver.solve(rhs);
        Eigen::MatrixXd cov = solver.solve(Eigen::MatrixXd::Identity(spec.k(), spec.k()));
        density.covariance = 0.5 * (cov + cov.transpose());
        density.sigma_ii = sigma_ii;
        result.equations.push_back(std::move(density));
    }
    return result;
}

inline MinnesotaResult minnesota_posterior(const AlignedMatrix& data, VarSpec spec,
                                           const MinnesotaHyper& hyper) {
    return minnesota_posterior(data.data, spec, hyper);
}

/// Stack the per-equation posterior means into the k x n layout used by
/// VarEstimate, then unpack into lag matrices — the posterior-mean VAR.
inline VarEstimate posterior_mean_estimate(const MinnesotaResult& result) {
    VarEstimate est = result.ols;
    const VarSpec spec = result.ols.spec;
    for (int i = 0; i < spec.n; ++i) {
        est.coef_matrix.col(i) = result.equations[static_cast<std::size_t>(i)].mean;
    }
    for (int l = 1; l <= spec.p; ++l) {
        for (int i = 0; i < spec.n; ++i) {
            for (int j = 0; j < spec.n; ++j) {
                est.coeffs[static_cast<std::size_t>(l - 1)](i, j) =
                    est.coef_matrix(coef_index(l, j, spec.n), i);
            }
        }
    }
    if (spec.intercept) est.intercept = est.coef_matrix.row(spec.k() - 1).transpose();
    est.residuals.resize(0, 0);
    // sigma stays the fixed OLS estimate by construction
    return est;
}

} // namespace disvar
