#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "disvar/errors.hpp"
#include "disvar/series.hpp"
#include "disvar/shares.hpp"

namespace disvar {

/// Dispersion of the balance statistic: sqrt(P + M - (P - M)^2) for a
/// three-category share (P, E, M) in fractions. Ignores how the neutral
/// category splits the mass. 1 at full polarization (P = M = 1/2), 0 when
/// one extreme category holds everything or both extremes are empty.
inline double disp(const ShareVector& share) {
    if (share.size() != 3) {
        throw ValidationError("DISP is defined for 3 categories, got " +
                              std::to_string(share.size()));
    }
    const double p = share[0];
    const double m = share[2];
    double radicand = p + m - (p - m) * (p - m);
    if (radicand < 0.0) radicand = 0.0; // construction tolerance can leave a tiny negative
    return std::sqrt(radicand);
}

/// Geometric discrepancy: one minus the distance from the share point to
/// the simplex barycenter, normalized by the barycenter-to-vertex distance
/// sqrt((N-1)/N). 1 when replies are equidistributed (maximum disagreement),
/// 0 when a single category draws all answers. Works for any N >= 2 and is
/// invariant under permutations of the categories.
inline double discrepancy(const ShareVector& share) {
    const std::size_t n = share.size();
    const double center = 1.0 / static_cast<double>(n);
    double sumsq = 0.0;
    for (double v : share) {
        const double dev = v - center;
        sumsq += dev * dev;
    }
    const double radius = std::sqrt((static_cast<double>(n) - 1.0) / static_cast<double>(n));
    const double value = 1.0 - std::sqrt(sumsq) / radius;
    return std::clamp(value, 0.0, 1.0);
}

/// Apply one of the metrics to every month of a panel.
inline IndicatorSeries indicator_series(const SurveyPanel& panel, Metric metric) {
    if (panel.shares.empty()) throw ValidationError("empty panel for " + panel.country);
    if (metric == Metric::Disp && panel.categories() != 3) {
        throw ValidationError("DISP needs a 3-category panel; " + panel.country + "/" +
                              to_string(panel.agent) + "/" + to_string(panel.question) + " has " +
                              std::to_string(panel.categories()));
    }
    IndicatorSeries out;
    out.metric = metric;
    out.country = panel.country;
    out.agent = panel.agent;
    out.question = panel.question;
    out.start = panel.start;
    out.values.reserve(panel.size());
    for (const auto& share : panel.shares) {
        out.values.push_back(metric == Metric::D ? discrepancy(share) : disp(share));
    }
    return out;
}

/// Pointwise arithmetic mean of the three per-question series of one agent.
/// All three must cover the same months with the same metric.
inline AggregateDisagreement aggregate(const std::vector<IndicatorSeries>& components) {
    if (components.size() != 3) {
        throw ValidationError("aggregation needs exactly 3 component series, got " +
                              std::to_string(components.size()));
    }
    const auto& first = components.front();
    bool have[3] = {false, false, false};
    for (const auto& c : components) {
        if (c.agent != first.agent || c.metric != first.metric || c.country != first.country) {
            throw ValidationError("mixed agents/metrics: components must share agent, metric, "
                                  "and country");
        }
        if (c.start != first.start || c.size() != first.size()) {
            throw ValidationError("mismatched ranges: " + to_string(c.start) + ".." +
                                  to_string(c.end()) + " vs " + to_string(first.start) + ".." +
                                  to_string(first.end()));
        }
        have[static_cast<int>(c.question)] = true;
    }
    if (!(have[0] && have[1] && have[2])) {
        throw ValidationError("components must cover activity, prices, and employment");
    }

    AggregateDisagreement out;
    out.agent = first.agent;
    out.metric = first.metric;
    out.country = first.country;
    out.start = first.start;
    for (const auto& c : components) {
        out.components[static_cast<int>(c.question)] = c;
    }
    out.values.resize(first.size());
    for (std::size_t t = 0; t < first.size(); ++t) {
        out.values[t] =
            (components[0].values[t] + components[1].values[t] + components[2].values[t]) / 3.0;
    }
    return out;
}

} // namespace disvar
