#pragma once

#include "lpp/weights.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace lpp {

struct RateTolerances {
    double opt_tol = 1e-10;  // bracket width on nu in the Legendre maximization
    double inv_tol = 1e-9;   // bracket width on theta in the inverse
};

// Upper-tail rate function I(x) = sup_{nu>0} (x nu - Lambda(nu)) and the
// inverse of its increasing branch above the mean.
//
// The objective is concave in nu with derivative x - Lambda'(nu), so the
// supremum is located by sign bisection on the derivative over a bracket:
// for a finite MGF domain the bracket is capped just below the domain edge;
// otherwise the upper end doubles from 1 until the derivative turns negative.
// When it never turns (only possible at x equal to a finite essential sup),
// the doubling either detects a converged limit (an atom at the support edge,
// e.g. bernoulli) or concludes the supremum diverges.
//
// Handles are immutable after construction; evaluations are pure.
class RateFunctionHandle {
public:
    explicit RateFunctionHandle(WeightDistribution dist, RateTolerances tol = {})
        : dist_(std::move(dist)),
          tol_(tol),
          mean_(dist_.mean()),
          nu_sup_(dist_.mgf_domain_sup()),
          x_max_(dist_.essential_sup()) {
        rate_sup_ = std::isfinite(x_max_) ? compute_rate(x_max_) : inf;
    }

    const WeightDistribution& distribution() const { return dist_; }
    double mean() const { return mean_; }
    double nu_sup() const { return nu_sup_; }
    double x_max() const { return x_max_; }

    // sup of I over the support, i.e. lim_{theta -> x_max} I(theta); +inf for
    // unbounded support.
    double rate_sup() const { return rate_sup_; }

    // Whether rate_inverse_plus(beta) saturates at the essential supremum.
    // rate_sup_ itself carries ~1e-15 numerical error, so the comparison
    // allows matching slack; betas that close to the sup map to x_max anyway.
    bool inverse_saturates(double beta) const {
        return std::isfinite(x_max_) &&
               beta >= rate_sup_ - 1e-12 * std::max(1.0, std::abs(rate_sup_));
    }

    // I(x); 0 for x <= mean (the sup over nu > 0 is approached at nu -> 0),
    // +inf beyond the essential supremum.
    double rate(double x) const {
        if (x <= mean_) return 0.0;
        if (x > x_max_) return inf;
        return compute_rate(x);
    }

    // Smallest theta > mean with I(theta) > beta. Returns mean at beta = 0 and
    // the essential supremum once beta reaches rate_sup (bounded laws only).
    double rate_inverse_plus(double beta) const {
        if (beta < 0.0) throw std::invalid_argument("rate_inverse_plus requires beta >= 0");
        if (beta == 0.0) return mean_;
        if (std::isfinite(x_max_)) {
            if (inverse_saturates(beta)) return x_max_;
            return bisect_rate(mean_, x_max_, beta);
        }
        double step = 1.0;
        double lo = mean_;
        int doublings = 0;
        while (compute_rate(mean_ + step) <= beta) {
            lo = mean_ + step;
            step *= 2.0;
            if (++doublings > 200)
                throw std::runtime_error("rate_inverse_plus: bracket expansion failed "
                                         "(200 doublings without exceeding beta)");
        }
        return bisect_rate(lo, mean_ + step, beta);
    }

private:
    static constexpr double inf = std::numeric_limits<double>::infinity();

    double objective(double x, double nu) const { return x * nu - dist_.log_mgf(nu); }
    double slope(double x, double nu) const { return x - dist_.log_mgf_derivative(nu); }

    double compute_rate(double x) const {
        double lo = 0.0;
        double hi;
        if (std::isfinite(nu_sup_)) {
            hi = nu_sup_ * (1.0 - 1e-9);
            if (slope(x, hi) >= 0.0) return objective(x, hi);
        } else {
            hi = 1.0;
            double prev = -inf;
            bool bracketed = false;
            // Cap at 2^40: converged limits show up long before then, and the
            // x*nu - Lambda(nu) difference is still far from losing precision.
            for (int i = 0; i <= 40; ++i) {
                if (slope(x, hi) <= 0.0) {
                    bracketed = true;
                    break;
                }
                const double cur = objective(x, hi);
                if (cur - prev <= 1e-12 * std::max(1.0, std::abs(cur))) return cur;
                prev = cur;
                lo = hi;
                hi *= 2.0;
            }
            if (!bracketed) return inf;
        }
        while (hi - lo > tol_.opt_tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;  // bracket hit float resolution
            if (slope(x, mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return objective(x, 0.5 * (lo + hi));
    }

    // Bisects to the theta tolerance, then keeps halving (down to float
    // resolution at worst) until the value error is small too; I can be very
    // steep near a support edge, where a width criterion alone is not enough.
    double bisect_rate(double lo, double hi, double beta) const {
        for (;;) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;  // bracket hit float resolution
            const double r = compute_rate(mid);
            if (hi - lo <= tol_.inv_tol && std::abs(r - beta) <= tol_.inv_tol) break;
            if (r > beta)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    }

    WeightDistribution dist_;
    RateTolerances tol_;
    double mean_;
    double nu_sup_;
    double x_max_;
    double rate_sup_;
};

// Closed-form I(x) for the families that admit one; the test oracle for the
// numerical Legendre transform. Follows the same one-sided convention
// (identically 0 at and below the mean).
inline std::optional<double> rate_closed_form(const WeightDistribution& dist, double x) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (dist.family()) {
        case Family::exponential: {
            const double rate = dist.param_a();
            if (x <= 1.0 / rate) return 0.0;
            return rate * x - 1.0 - std::log(rate * x);
        }
        case Family::gaussian: {
            const double mu = dist.param_a();
            const double sigma = dist.param_b();
            if (x <= mu) return 0.0;
            return (x - mu) * (x - mu) / (2.0 * sigma * sigma);
        }
        case Family::bernoulli: {
            const double q = dist.param_a();
            if (x <= q) return 0.0;
            if (x > 1.0) return inf;
            if (x == 1.0) return -std::log(q);
            return x * std::log(x / q) + (1.0 - x) * std::log((1.0 - x) / (1.0 - q));
        }
        default:
            return std::nullopt;
    }
}

} // namespace lpp
