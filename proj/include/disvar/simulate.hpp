#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "disvar/errors.hpp"
#include "disvar/month.hpp"
#include "disvar/rng.hpp"
#include "disvar/series.hpp"
#include "disvar/shares.hpp"

namespace disvar {

/// Stationary standard deviation of each latent log-ratio coordinate in
/// simulate_share_panel. Chosen so compositions wander visibly without
/// pinning to a vertex.
inline constexpr double kLatentStationarySd = 0.25;

/// Draw a monthly panel of share vectors from a logistic-normal latent AR(1)
/// with a Dirichlet observation layer.
///
/// Latent state: z_t - mu = persistence * (z_{t-1} - mu) + sqrt(1 - persistence^2) * s * eps_t,
/// eps iid standard normal per coordinate, s = kLatentStationarySd, z_0 drawn
/// from the stationary law. The latent mean composition is softmax(z_t); the
/// observed row is Dirichlet(concentration * softmax(z_t)). Deterministic for
/// a fixed (seed, T, N, persistence, concentration, latent_mean).
///
/// `latent_mean` is mu: empty means all zeros (compositions wander around the
/// uniform point); otherwise it must have N entries and shifts the long-run
/// center to softmax(mu), e.g. a neutral-heavy survey baseline.
/// If `latent_out` is non-null it receives the T latent mean compositions.
inline SurveyPanel simulate_share_panel(std::uint64_t seed, std::size_t T, std::size_t N,
                                        double persistence, double concentration,
                                        std::string country = "SIM",
                                        Agent agent = Agent::business,
                                        Question question = Question::activity,
                                        YearMonth start = YearMonth{2005, 5},
                                        std::vector<ShareVector>* latent_out = nullptr,
                                        std::vector<double> latent_mean = {}) {
    if (T < 1) throw ValidationError("simulate_share_panel: T must be >= 1");
    if (N < 2) throw ValidationError("simulate_share_panel: N must be >= 2");
    if (!(persistence >= 0.0 && persistence < 1.0)) {
        throw ValidationError("simulate_share_panel: persistence must lie in [0, 1)");
    }
    if (!(concentration > 0.0)) {
        throw ValidationError("simulate_share_panel: concentration must be positive");
    }
    if (!latent_mean.empty() && latent_mean.size() != N) {
        throw ValidationError("simulate_share_panel: latent_mean must have N entries, got " +
                              std::to_string(latent_mean.size()));
    }
    if (latent_mean.empty()) latent_mean.assign(N, 0.0);

    Rng rng(seed);
    const double innov_sd = kLatentStationarySd * std::sqrt(1.0 - persistence * persistence);

    std::vector<double> z(N);
    for (std::size_t j = 0; j < N; ++j) z[j] = latent_mean[j] + kLatentStationarySd * rng.normal();

    if (latent_out) {
        latent_out->clear();
        latent_out->reserve(T);
    }

    std::vector<ShareVector> rows;
    rows.reserve(T);
    std::vector<double> mean(N), alpha(N);
    for (std::size_t t = 0; t < T; ++t) {
        if (t > 0) {
            for (std::size_t j = 0; j < N; ++j) {
                z[j] = latent_mean[j] + persistence * (z[j] - latent_mean[j]) +
                       innov_sd * rng.normal();
            }
        }
        // softmax with max subtraction for overflow safety
        double zmax = z[0];
        for (std::size_t j = 1; j < N; ++j) zmax = std::max(zmax, z[j]);
        double denom = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            mean[j] = std::exp(z[j] - zmax);
            denom += mean[j];
        }
        for (std::size_t j = 0; j < N; ++j) mean[j] /= denom;
        if (latent_out) latent_out->emplace_back(mean);

        for (std::size_t j = 0; j < N; ++j) alpha[j] = concentration * mean[j];
        rows.emplace_back(rng.dirichlet(alpha));
    }

    SurveyPanel panel;
    panel.country = std::move(country);
    panel.agent = agent;
    panel.question = question;
    panel.start = start;
    panel.shares = std::move(rows);
    return panel;
}

/// Gaussian AR(1) growth series around a constant mean:
/// g_t = mean + ar * (g_{t-1} - mean) + sd * eps_t, g_0 at the stationary law.
inline MacroSeries simulate_macro_series(std::uint64_t seed, std::size_t T,
                                         Frequency frequency = Frequency::monthly,
                                         std::string country = "SIM",
                                         YearMonth start = YearMonth{2005, 1},
                                         double mean = 1.5, double ar = 0.8, double sd = 0.4) {
    if (T < 1) throw ValidationError("simulate_macro_series: T must be >= 1");
    if (!(ar >= 0.0 && ar < 1.0)) {
        throw ValidationError("simulate_macro_series: ar must lie in [0, 1)");
    }
    if (!(sd >= 0.0)) throw ValidationError("simulate_macro_series: sd must be nonnegative");

    Rng rng(seed);
    const double stat_sd = sd / std::sqrt(1.0 - ar * ar);
    std::vector<double> values(T);
    double g = mean + stat_sd * rng.normal();
    values[0] = g;
    for (std::size_t t = 1; t < T; ++t) {
        g = mean + ar * (g - mean) + sd * rng.normal();
        values[t] = g;
    }

    MacroSeries out;
    out.country = std::move(country);
    out.frequency = frequency;
    out.start = start;
    out.values = std::move(values);
    return out;
}

} // namespace disvar
