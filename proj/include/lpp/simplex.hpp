#pragma once

#include "lpp/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lpp {

// A point on the probability simplex. Construction validates (entries >= 0,
// sum within 1e-6 of 1) and then normalizes to unit sum; the pre-normalization
// deviation is kept for inspection. Inputs further off than 1e-6 are rejected
// rather than silently rescaled.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> entries) : p_(std::move(entries)) {
        if (p_.empty()) throw std::invalid_argument("probability vector must have d >= 1");
        for (double v : p_)
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument("probability vector entries must be finite and >= 0");
        // normalization divisor accumulates in sorted order, so permutations
        // of the same entries normalize bit-identically
        std::vector<double> sorted = p_;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double sum = 0.0;
        for (double v : sorted) sum += v;
        adjustment_ = sum - 1.0;
        if (std::abs(adjustment_) > 1e-6)
            throw std::invalid_argument("probability vector sum deviates from 1 by " +
                                        std::to_string(adjustment_) + " (> 1e-6)");
        for (double& v : p_) v /= sum;
    }

    std::size_t dim() const { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    const std::vector<double>& entries() const { return p_; }

    // Signed deviation of the raw input sum from 1, before normalization.
    double adjustment() const { return adjustment_; }

private:
    std::vector<double> p_;
    double adjustment_ = 0.0;
};

// Shannon entropy in nats, with 0 log 0 = 0. Entries are summed in sorted
// order, so permutations of p give bit-identical results.
inline double entropy(const ProbabilityVector& p) {
    std::vector<double> s = p.entries();
    std::sort(s.begin(), s.end(), std::greater<>());
    double h = 0.0;
    for (double v : s) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

// True iff x is majorized by y (x "more spread out" than y): descending
// partial sums of x never exceed those of y, totals equal. Slack 1e-12.
inline bool majorizes(const ProbabilityVector& x, const ProbabilityVector& y) {
    if (x.dim() != y.dim())
        throw std::invalid_argument("majorizes: dimension mismatch (" +
                                    std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) + ")");
    std::vector<double> xs = x.entries();
    std::vector<double> ys = y.entries();
    std::sort(xs.begin(), xs.end(), std::greater<>());
    std::sort(ys.begin(), ys.end(), std::greater<>());
    constexpr double slack = 1e-12;
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        if (sx > sy + slack) return false;
    }
    sx += xs.back();
    sy += ys.back();
    return std::abs(sx - sy) <= slack;
}

// Samples y uniformly on the simplex (normalized exponentials) and derives x
// by a stream-chosen number of Robin Hood transfers: each transfer moves mass
// from a larger entry to a smaller one by at most half their gap, so entries
// never cross and x is majorized by y at every step.
inline std::pair<ProbabilityVector, ProbabilityVector>
random_majorization_pair(std::size_t d, RandomStream& stream) {
    if (d < 2) throw std::invalid_argument("random_majorization_pair requires d >= 2");
    std::vector<double> y(d);
    double sum = 0.0;
    for (double& v : y) {
        v = -std::log(stream.uniform01_positive());
        sum += v;
    }
    for (double& v : y) v /= sum;

    std::vector<double> x = y;
    const std::uint64_t transfers = stream.uniform_below(2 * d + 1);
    for (std::uint64_t t = 0; t < transfers; ++t) {
        std::size_t i = static_cast<std::size_t>(stream.uniform_below(d));
        std::size_t j = static_cast<std::size_t>(stream.uniform_below(d));
        if (x[i] == x[j]) continue;
        if (x[i] < x[j]) std::swap(i, j);
        const double delta = 0.5 * (x[i] - x[j]) * stream.uniform01();
        x[i] -= delta;
        x[j] += delta;
    }
    return {ProbabilityVector(std::move(x)), ProbabilityVector(std::move(y))};
}

} // namespace lpp
