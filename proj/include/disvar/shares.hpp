#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "disvar/errors.hpp"

namespace disvar {

/// A vector of N >= 2 reply-category proportions. Entries are nonnegative
/// fractions summing to one (checked at construction). For the canonical
/// three-category case the order is (positive, neutral, negative).
class ShareVector {
public:
    static constexpr double kSumTolerance = 1e-9;

    explicit ShareVector(std::vector<double> values) : values_(std::move(values)) {
        if (values_.size() < 2) {
            throw ValidationError("share vector needs at least 2 categories, got " +
                                  std::to_string(values_.size()));
        }
        double sum = 0.0;
        for (double v : values_) {
            if (!(v >= 0.0)) throw ValidationError("negative share " + std::to_string(v));
            sum += v;
        }
        if (std::abs(sum - 1.0) > kSumTolerance) {
            throw ValidationError("shares sum to " + std::to_string(sum) + ", expected 1");
        }
    }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    friend bool operator==(const ShareVector& a, const ShareVector& b) {
        return a.values_ == b.values_;
    }

private:
    std::vector<double> values_;
};

/// Rescale a raw nonnegative vector to sum exactly one, provided its sum is
/// already within `tol` of one. Published tables round shares, so small
/// deviations are expected; anything larger is treated as data corruption.
inline ShareVector renormalize(const std::vector<double>& raw, double tol) {
    if (tol < 0.0) throw ValidationError("renormalization tolerance must be nonnegative");
    double sum = 0.0;
    for (double v : raw) {
        if (!(v >= 0.0)) throw ValidationError("negative share " + std::to_string(v));
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol || !(sum > 0.0)) {
        throw ValidationError("sum " + std::to_string(sum) + " outside tolerance " +
                              std::to_string(tol));
    }
    std::vector<double> scaled(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) scaled[i] = raw[i] / sum;
    return ShareVector(std::move(scaled));
}

/// Collapse the six consumer reply categories
/// (strong positive, positive, same, negative, strong negative, don't know)
/// to three: both positive grades sum to P, both negative grades to M, and
/// the "don't know" share joins the neutral category E.
inline ShareVector collapse_consumer_categories(const ShareVector& raw) {
    if (raw.size() != 6) {
        throw ValidationError("consumer collapse expects 6 categories, got " +
                              std::to_string(raw.size()));
    }
    const double positive = raw[0] + raw[1];
    const double neutral = raw[2] + raw[5];
    const double negative = raw[3] + raw[4];
    return ShareVector({positive, neutral, negative});
}

} // namespace disvar
