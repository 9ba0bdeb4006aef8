#pragma once

#include "lpp/ldp.hpp"
#include "lpp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lpp {

// The entropy bound on the growth rate at one direction.
struct BoundReport {
    std::vector<double> direction;  // as given
    ProbabilityVector p;            // normalized direction
    double scale;                   // l1 norm of the direction
    double entropy_nats;
    double bound_on_g;              // scale * inverse-rate at the entropy
    bool degenerate;                // inverse saturated at the essential sup
};

namespace detail {

inline std::pair<double, bool> bound_at(const RateFunctionHandle& handle, double entropy_nats) {
    return {handle.rate_inverse_plus(entropy_nats), handle.inverse_saturates(entropy_nats)};
}

} // namespace detail

// g(direction) <= |direction|_1 * Iinv(H(direction / |direction|_1)).
//
// The l1 norm is accumulated over a descending sort of the entries and the
// entropy sums in sorted order as well, so permuted directions produce
// bit-identical reports.
inline BoundReport evaluate_bound(const RateFunctionHandle& handle,
                                  std::vector<double> direction) {
    if (direction.empty())
        throw std::invalid_argument("direction must have d >= 1 entries");
    double largest = 0.0;
    for (double v : direction) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("direction entries must be finite and >= 0");
        largest = std::max(largest, v);
    }
    if (largest == 0.0) throw std::invalid_argument("direction must be nonzero");

    std::vector<double> sorted = direction;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double scale = 0.0;
    for (double v : sorted) scale += v;

    std::vector<double> p(direction.size());
    for (std::size_t i = 0; i < direction.size(); ++i) p[i] = direction[i] / scale;
    ProbabilityVector prob(std::move(p));

    const double h = entropy(prob);
    auto [theta, saturated] = detail::bound_at(handle, h);
    return BoundReport{std::move(direction), std::move(prob), scale, h,
                       scale * theta, saturated};
}

inline BoundReport evaluate_bound(const WeightDistribution& dist, std::vector<double> direction) {
    return evaluate_bound(RateFunctionHandle(dist), std::move(direction));
}

struct BoundSurfaceRow {
    ProbabilityVector p;
    double entropy_nats;
    double bound;
    bool degenerate;
};

// The bound over the simplex grid {k/resolution}, rows in lexicographic order
// of p. Unit scale: rows carry Iinv(H(p)) itself.
inline std::vector<BoundSurfaceRow> bound_on_simplex_grid(const WeightDistribution& dist, int d,
                                                          int resolution) {
    if (d != 2 && d != 3)
        throw std::invalid_argument("simplex grid supports d in {2,3}");
    if (resolution < 2) throw std::invalid_argument("resolution too small (need >= 2)");

    const RateFunctionHandle handle(dist);
    const double r = resolution;
    std::vector<BoundSurfaceRow> rows;

    auto emit = [&](std::vector<double> p) {
        ProbabilityVector prob(std::move(p));
        const double h = entropy(prob);
        auto [theta, saturated] = detail::bound_at(handle, h);
        rows.push_back(BoundSurfaceRow{std::move(prob), h, theta, saturated});
    };

    if (d == 2) {
        for (int k = 0; k <= resolution; ++k)
            emit({k / r, (resolution - k) / r});
    } else {
        for (int k1 = 0; k1 <= resolution; ++k1)
            for (int k2 = 0; k2 + k1 <= resolution; ++k2)
                emit({k1 / r, k2 / r, (resolution - k1 - k2) / r});
    }
    return rows;
}

} // namespace lpp
