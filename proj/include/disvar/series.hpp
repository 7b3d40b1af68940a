#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "disvar/errors.hpp"
#include "disvar/month.hpp"
#include "disvar/shares.hpp"

namespace disvar {

enum class Agent { business, consumer };
enum class Question { activity, prices, employment };
enum class Metric { D, Disp };

inline std::string to_string(Agent a) {
    return a == Agent::business ? "business" : "consumer";
}

inline Agent parse_agent(std::string_view s) {
    if (s == "business") return Agent::business;
    if (s == "consumer") return Agent::consumer;
    throw ValidationError("unknown agent '" + std::string(s) + "'");
}

inline std::string to_string(Question q) {
    switch (q) {
        case Question::activity: return "activity";
        case Question::prices: return "prices";
        default: return "employment";
    }
}

inline Question parse_question(std::string_view s) {
    if (s == "activity") return Question::activity;
    if (s == "prices") return Question::prices;
    if (s == "employment") return Question::employment;
    throw ValidationError("unknown question '" + std::string(s) + "'");
}

inline std::string to_string(Metric m) { return m == Metric::D ? "D" : "DISP"; }

inline Metric parse_metric(std::string_view s) {
    if (s == "D") return Metric::D;
    if (s == "DISP") return Metric::Disp;
    throw ValidationError("unknown metric '" + std::string(s) + "', expected D or DISP");
}

/// Monthly panel of reply shares for one (country, agent, question).
/// Storage is a start month plus a dense vector, so gap-free coverage is
/// structural rather than re-checked on every access.
struct SurveyPanel {
    std::string country;
    Agent agent = Agent::business;
    Question question = Question::activity;
    YearMonth start;
    std::vector<ShareVector> shares;

    std::size_t size() const { return shares.size(); }
    int categories() const { return shares.empty() ? 0 : static_cast<int>(shares[0].size()); }
    YearMonth month_at(std::size_t i) const { return start.plus(static_cast<int>(i)); }
    YearMonth end() const { return start.plus(static_cast<int>(shares.size()) - 1); }
};

/// Macro reference series (year-on-year growth, percent). Quarterly series
/// step three months per observation, anchored at each quarter's first month.
struct MacroSeries {
    std::string country;
    Frequency frequency = Frequency::monthly;
    YearMonth start;
    std::vector<double> values;

    int step() const { return frequency == Frequency::monthly ? 1 : 3; }
    std::size_t size() const { return values.size(); }
    YearMonth month_at(std::size_t i) const { return start.plus(static_cast<int>(i) * step()); }
    /// Last month covered (for quarterly series, the last month of the last quarter).
    YearMonth coverage_end() const {
        const int n = static_cast<int>(values.size());
        return frequency == Frequency::monthly ? start.plus(n - 1) : start.plus(3 * n - 1);
    }
};

/// One disagreement value per month for one (country, agent, question).
struct IndicatorSeries {
    Metric metric = Metric::D;
    std::string country;
    Agent agent = Agent::business;
    Question question = Question::activity;
    YearMonth start;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    YearMonth month_at(std::size_t i) const { return start.plus(static_cast<int>(i)); }
    YearMonth end() const { return start.plus(static_cast<int>(values.size()) - 1); }
};

/// Mean of the three per-question disagreement series of one agent.
/// The components are kept so aggregate values can be audited.
struct AggregateDisagreement {
    Agent agent = Agent::business;
    Metric metric = Metric::D;
    std::string country;
    std::array<IndicatorSeries, 3> components; // activity, prices, employment
    YearMonth start;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    YearMonth end() const { return start.plus(static_cast<int>(values.size()) - 1); }
};

/// Estimation-ready T x 2 matrix. Column 0 is always the disagreement
/// series and column 1 the growth series; the ordering matters because
/// shock identification puts the uncertainty proxy first.
struct AlignedMatrix {
    static constexpr int kDisagreementCol = 0;
    static constexpr int kGrowthCol = 1;

    YearMonth start;
    Eigen::MatrixXd data; // T x 2

    std::size_t size() const { return static_cast<std::size_t>(data.rows()); }
};

enum class AlignMethod { step, linear };

inline std::string to_string(AlignMethod m) { return m == AlignMethod::step ? "step" : "linear"; }

inline AlignMethod parse_align_method(std::string_view s) {
    if (s == "step") return AlignMethod::step;
    if (s == "linear") return AlignMethod::linear;
    throw ValidationError("unknown alignment method '" + std::string(s) + "'");
}

/// Expand a quarterly series to monthly coverage of the same span.
///
/// step:   each quarter's value is repeated for its three months, which
///         introduces no dynamics of its own.
/// linear: quarter values are anchored at mid-quarter months and joined by
///         straight lines; the first and last months extend flat.
inline MacroSeries align_frequency(const MacroSeries& macro, AlignMethod method) {
    if (macro.frequency == Frequency::monthly) {
        throw ValidationError("series for " + macro.country + " is already monthly");
    }
    const int quarters = static_cast<int>(macro.values.size());
    if (quarters < 1) throw ValidationError("frequency alignment needs at least 1 quarter");
    if (method == AlignMethod::linear && quarters < 2) {
        throw ValidationError("linear alignment needs at least 2 quarters, got " +
                              std::to_string(quarters));
    }
    MacroSeries out;
    out.country = macro.country;
    out.frequency = Frequency::monthly;
    out.start = macro.start;
    const int months = 3 * quarters;
    out.values.resize(months);
    if (method == AlignMethod::step) {
        for (int q = 0; q < quarters; ++q) {
            for (int m = 0; m < 3; ++m) out.values[3 * q + m] = macro.values[q];
        }
        return out;
    }
    // Anchor for quarter q sits at month offset 3q + 1 (the quarter's middle month).
    const int first_anchor = 1;
    const int last_anchor = 3 * (quarters - 1) + 1;
    for (int m = 0; m < months; ++m) {
        if (m <= first_anchor) {
            out.values[m] = macro.values.front();
        } else if (m >= last_anchor) {
            out.values[m] = macro.values.back();
        } else {
            const int q = (m - 1) / 3; // anchor interval [3q+1, 3q+4)
            const double frac = static_cast<double>(m - (3 * q + 1)) / 3.0;
            out.values[m] = macro.values[q] + frac * (macro.values[q + 1] - macro.values[q]);
        }
    }
    return out;
}

/// Intersect a disagreement series with a monthly growth series into the
/// two-column estimation matrix (disagreement first).
inline AlignedMatrix join_for_var(const IndicatorSeries& disagreement, const MacroSeries& growth) {
    if (growth.frequency != Frequency::monthly) {
        throw ValidationError("macro series for " + growth.country +
                              " is quarterly; align it to monthly before joining");
    }
    if (disagreement.values.empty() || growth.values.empty()) {
        throw ValidationError("empty overlap: one of the series has no observations");
    }
    const YearMonth lo = std::max(disagreement.start, growth.start);
    const YearMonth hi = std::min(disagreement.end(), growth.coverage_end());
    if (lo > hi) {
        throw ValidationError("empty overlap between disagreement (" +
                              to_string(disagreement.start) + ".." + to_string(disagreement.end()) +
                              ") and growth (" + to_string(growth.start) + ".." +
                              to_string(growth.coverage_end()) + ")");
    }
    const int T = months_between(lo, hi) + 1;
    AlignedMatrix out;
    out.start = lo;
    out.data.resize(T, 2);
    const int d_off = months_between(disagreement.start, lo);
    const int g_off = months_between(growth.start, lo);
    for (int t = 0; t < T; ++t) {
        out.data(t, AlignedMatrix::kDisagreementCol) = disagreement.values[d_off + t];
        out.data(t, AlignedMatrix::kGrowthCol) = growth.values[g_off + t];
    }
    return out;
}

} // namespace disvar
