#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "disvar/errors.hpp"
#include "disvar/linalg.hpp"
#include "disvar/minnesota.hpp"
#include "disvar/rng.hpp"
#include "disvar/var.hpp"

namespace disvar {

/// What to do with posterior draws whose companion matrix is explosive.
enum class StabilityRule { keep, reject };

inline StabilityRule parse_stability_rule(const std::string& s) {
    if (s == "keep") return StabilityRule::keep;
    if (s == "reject") return StabilityRule::reject;
    throw ValidationError("unknown stability rule: " + s + " (expected keep or reject)");
}

inline const char* to_string(StabilityRule r) {
    return r == StabilityRule::keep ? "keep" : "reject";
}

/// Spectral-radius cutoff for the reject rule and the retry allowance per
/// draw index (total attempts therefore never exceed 10 x draws).
inline constexpr double kStabilityCutoff = 0.999;
inline constexpr int kMaxAttemptsPerDraw = 10;

/// Recursive-identification impact matrix: permute sigma into the given
/// variable ordering and take the lower Cholesky factor. Column j is the
/// response vector (in the permuted order) to a one-standard-deviation shock
/// of the j-th ordered variable.
inline Eigen::MatrixXd cholesky_impact(const Eigen::MatrixXd& sigma,
                                       const std::vector<int>& ordering) {
    const Eigen::Index n = sigma.rows();
    if (sigma.cols() != n) throw ValidationError("covariance matrix must be square");
    if (ordering.size() != static_cast<std::size_t>(n)) {
        throw ValidationError("ordering length does not match covariance dimension");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int idx : ordering) {
        if (idx < 0 || idx >= n || seen[static_cast<std::size_t>(idx)]) {
            throw ValidationError("ordering is not a permutation of the variable indices");
        }
        seen[static_cast<std::size_t>(idx)] = true;
    }
    Eigen::MatrixXd permuted(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            permuted(i, j) = sigma(ordering[static_cast<std::size_t>(i)],
                                   ordering[static_cast<std::size_t>(j)]);
        }
    }
    return cholesky_lower(permuted);
}

inline std::vector<int> identity_ordering(int n) {
    std::vector<int> ordering(static_cast<std::size_t>(n));
    std::iota(ordering.begin(), ordering.end(), 0);
    return ordering;
}

/// Moving-average responses: Phi_0 = I, Phi_h = sum_{j=1..min(h,p)} A_j Phi_{h-j};
/// entry (i, j) of element h is the response of variable i at horizon h to
/// shock j. The impact matrix B0 premultiplies every Phi_h.
inline std::vector<Eigen::MatrixXd> irf_point(const std::vector<Eigen::MatrixXd>& coeffs,
                                              const Eigen::MatrixXd& B0, int H) {
    if (H < 0) throw ValidationError("horizon must be >= 0");
    if (coeffs.empty()) throw ValidationError("impulse responses need at least one lag matrix");
    const Eigen::Index n = coeffs.front().rows();
    if (B0.rows() != n || B0.cols() != n) {
        throw ValidationError("impact matrix dimensions do not match the estimate");
    }
    const int p = static_cast<int>(coeffs.size());

    std::vector<Eigen::MatrixXd> phi(static_cast<std::size_t>(H) + 1);
    phi[0] = Eigen::MatrixXd::Identity(n, n);
    for (int h = 1; h <= H; ++h) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
        for (int j = 1; j <= std::min(h, p); ++j) {
            acc += coeffs[static_cast<std::size_t>(j - 1)] * phi[static_cast<std::size_t>(h - j)];
        }
        phi[static_cast<std::size_t>(h)] = std::move(acc);
    }
    for (auto& m : phi) m = m * B0;
    return phi;
}

inline std::vector<Eigen::MatrixXd> irf_point(const VarEstimate& est, const Eigen::MatrixXd& B0,
                                              int H) {
    if (est.spec.n != B0.rows()) {
        throw ValidationError("impact matrix dimensions do not match the estimate");
    }
    return irf_point(est.coeffs, B0, H);
}

struct IrfParams {
    int horizon = 24;
    int draws = 1000;
    std::uint64_t seed = 1;
    double lower_q = 0.16;
    double upper_q = 0.84;
    StabilityRule rule = StabilityRule::reject;
    std::vector<int> ordering; ///< empty = identity (disagreement first by layout)
};

struct IrfBundle {
    int horizon = 0;
    std::vector<Eigen::MatrixXd> point; ///< h = 0..H, each n x n [response var][shock]
    std::vector<Eigen::MatrixXd> lower;
    std::vector<Eigen::MatrixXd> upper;
    int draws = 0;
    std::uint64_t seed = 0;
    std::size_t rejected_explosive = 0;
    std::vector<int> ordering;
    double lower_q = 0.0;
    double upper_q = 0.0;
};

namespace detail {

/// One coefficient-vector draw per equation, stacked k x n.
inline Eigen::MatrixXd draw_coef_matrix(const MinnesotaResult& post,
                                        const std::vector<Eigen::MatrixXd>& cov_roots, Rng& rng) {
    const int n = post.ols.spec.n;
    const int k = post.ols.spec.k();
    Eigen::MatrixXd beta(k, n);
    Eigen::VectorXd z(k);
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < k; ++r) z(r) = rng.normal();
        beta.col(i) = post.equations[static_cast<std::size_t>(i)].mean +
                      cov_roots[static_cast<std::size_t>(i)] * z;
    }
    return beta;
}

inline std::vector<Eigen::MatrixXd> unpack_lags(const Eigen::MatrixXd& coef_matrix,
                                                VarSpec spec) {
    std::vector<Eigen::MatrixXd> coeffs(static_cast<std::size_t>(spec.p));
    for (int l = 1; l <= spec.p; ++l) {
        Eigen::MatrixXd A(spec.n, spec.n);
        for (int i = 0; i < spec.n; ++i) {
            for (int j = 0; j < spec.n; ++j) A(i, j) = coef_matrix(coef_index(l, j, spec.n), i);
        }
        coeffs[static_cast<std::size_t>(l - 1)] = std::move(A);
    }
    return coeffs;
}

} // namespace detail

/// Monte-Carlo quantile bands around the posterior-mean IRF. Coefficients are
/// drawn from the per-equation Normal posteriors (independent across
/// equations, sigma and hence B0 held fixed); under the reject rule a draw
/// index retries explosive draws up to kMaxAttemptsPerDraw times on its own
/// substream, so output is bit-reproducible and independent of scheduling.
inline IrfBundle irf_bands(const MinnesotaResult& post, const IrfParams& params) {
    const VarSpec spec = post.ols.spec;
    if (params.draws < 100) throw ValidationError("draws must be >= 100");
    if (!(params.lower_q > 0.0 && params.lower_q < params.upper_q && params.upper_q < 1.0)) {
        throw ValidationError("quantiles must satisfy 0 < lower < upper < 1");
    }
    if (params.horizon < 0) throw ValidationError("horizon must be >= 0");

    std::vector<int> ordering =
        params.ordering.empty() ? identity_ordering(spec.n) : params.ordering;
    const Eigen::MatrixXd B0 = cholesky_impact(post.sigma, ordering);

    std::vector<Eigen::MatrixXd> cov_roots;
    cov_roots.reserve(post.equations.size());
    for (const auto& eq : post.equations) {
        if (!eq.covariance.allFinite() ||
            (eq.covariance - eq.covariance.transpose()).cwiseAbs().maxCoeff() >
                1e-8 * std::max(1.0, eq.covariance.cwiseAbs().maxCoeff())) {
            throw ValidationError("degenerate posterior covariance");
        }
        cov_roots.push_back(psd_sqrt(eq.covariance));
    }

    IrfBundle bundle;
    bundle.horizon = params.horizon;
    bundle.draws = params.draws;
    bundle.seed = params.seed;
    bundle.ordering = ordering;
    bundle.lower_q = params.lower_q;
    bundle.upper_q = params.upper_q;

    Eigen::MatrixXd mean_coefs(spec.k(), spec.n);
    for (int i = 0; i < spec.n; ++i) {
        mean_coefs.col(i) = post.equations[static_cast<std::size_t>(i)].mean;
    }
    bundle.point = irf_point(detail::unpack_lags(mean_coefs, spec), B0, params.horizon);

    // sample[var][shock][h] is the vector of draw values
    const std::size_t H1 = static_cast<std::size_t>(params.horizon) + 1;
    const std::size_t cells = static_cast<std::size_t>(spec.n) * spec.n * H1;
    std::vector<std::vector<double>> samples(cells);
    for (auto& cell : samples) cell.reserve(static_cast<std::size_t>(params.draws));
    const auto cell_index = [&](int i, int j, std::size_t h) {
        return (static_cast<std::size_t>(i) * spec.n + static_cast<std::size_t>(j)) * H1 + h;
    };

    for (int d = 0; d < params.draws; ++d) {
        bool accepted = false;
        for (int attempt = 0; attempt < kMaxAttemptsPerDraw; ++attempt) {
            Rng rng(mix_seed(params.seed, static_cast<std::uint64_t>(d),
                             static_cast<std::uint64_t>(attempt)));
            const Eigen::MatrixXd beta = detail::draw_coef_matrix(post, cov_roots, rng);
            auto coeffs = detail::unpack_lags(beta, spec);
            if (params.rule == StabilityRule::reject &&
                spectral_radius(coeffs) > kStabilityCutoff) {
                ++bundle.rejected_explosive;
                continue;
            }
            const auto responses = irf_point(coeffs, B0, params.horizon);
            for (std::size_t h = 0; h < H1; ++h) {
                for (int i = 0; i < spec.n; ++i) {
                    for (int j = 0; j < spec.n; ++j) {
                        samples[cell_index(i, j, h)].push_back(responses[h](i, j));
                    }
                }
            }
            accepted = true;
            break;
        }
        if (!accepted) {
            throw Error("draw budget exhausted: posterior is too explosive under the reject rule");
        }
    }

    bundle.lower.assign(H1, Eigen::MatrixXd(spec.n, spec.n));
    bundle.upper.assign(H1, Eigen::MatrixXd(spec.n, spec.n));
    for (std::size_t h = 0; h < H1; ++h) {
        for (int i = 0; i < spec.n; ++i) {
            for (int j = 0; j < spec.n; ++j) {
                auto& cell = samples[cell_index(i, j, h)];
                std::sort(cell.begin(), cell.end());
                bundle.lower[h](i, j) = quantile_sorted(cell, params.lower_q);
                bundle.upper[h](i, j) = quantile_sorted(cell, params.upper_q);
            }
        }
    }
    return bundle;
}

} // namespace disvar
