#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "disvar/errors.hpp"

namespace disvar {

struct SummaryRow {
    std::string label;
    double mean = 0.0;
    double sd = 0.0; // sample standard deviation, n-1 denominator
    std::size_t n = 0;
};

/// Mean and sample standard deviation (n-1 denominator).
inline SummaryRow summary(std::span<const double> series, std::string label = {}) {
    const std::size_t n = series.size();
    if (n < 2) {
        throw ValidationError("summary needs at least 2 observations, got " + std::to_string(n));
    }
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : series) ss += (v - mean) * (v - mean);
    return SummaryRow{std::move(label), mean, std::sqrt(ss / static_cast<double>(n - 1)), n};
}

/// Sample Pearson correlation. Both inputs must be non-constant and of the
/// same length >= 3.
inline double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("length mismatch: " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
    }
    const std::size_t n = a.size();
    if (n < 3) throw ValidationError("correlation needs at least 3 observations");
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (!(va > 0.0) || !(vb > 0.0)) {
        throw ValidationError("constant series: correlation is undefined");
    }
    return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

/// Correlations between one series and leads/lags of another.
/// Convention: value(k) = corr(a_t, b_{t+k}); positive k looks at future b.
/// Each lag is computed on its own shifted overlap with that overlap's
/// means and standard deviations, so every value is a plain Pearson
/// correlation and lands in [-1, 1] exactly.
struct CrossCorrelogram {
    int max_lag = 0;
    std::vector<double> values; // index k + max_lag

    double at(int k) const {
        if (k < -max_lag || k > max_lag) {
            throw ValidationError("lag " + std::to_string(k) + " outside [-" +
                                  std::to_string(max_lag) + ", " + std::to_string(max_lag) + "]");
        }
        return values[static_cast<std::size_t>(k + max_lag)];
    }
};

inline CrossCorrelogram cross_correlogram(std::span<const double> a, std::span<const double> b,
                                          int max_lag) {
    if (a.size() != b.size()) {
        throw ValidationError("length mismatch: " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()));
    }
    if (max_lag < 0) throw ValidationError("max lag must be nonnegative");
    const int T = static_cast<int>(a.size());
    if (T - max_lag < 3) {
        throw ValidationError("insufficient overlap: " + std::to_string(T) +
                              " observations leave fewer than 3 pairs at lag " +
                              std::to_string(max_lag));
    }
    CrossCorrelogram out;
    out.max_lag = max_lag;
    out.values.resize(static_cast<std::size_t>(2 * max_lag + 1));
    for (int k = -max_lag; k <= max_lag; ++k) {
        const int lo = std::max(0, -k);
        const int hi = std::min(T, T - k); // pairs (a_t, b_{t+k}) for t in [lo, hi)
        const std::size_t len = static_cast<std::size_t>(hi - lo);
        std::vector<double> xs(len), ys(len);
        for (int t = lo; t < hi; ++t) {
            xs[static_cast<std::size_t>(t - lo)] = a[static_cast<std::size_t>(t)];
            ys[static_cast<std::size_t>(t - lo)] = b[static_cast<std::size_t>(t + k)];
        }
        out.values[static_cast<std::size_t>(k + max_lag)] = pearson(xs, ys);
    }
    return out;
}

} // namespace disvar
