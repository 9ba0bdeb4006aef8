#pragma once

#include "lpp/random.hpp"

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpp {

enum class Family { exponential, gaussian, bernoulli, geometric, uniform };

// A site-weight law with exact moments and log-moment-generating function.
//
// Shipped families:
//   exponential(rate)        rate > 0
//   gaussian(mean, stddev)   stddev > 0
//   bernoulli(prob)          prob in (0,1), values {0,1}
//   geometric(prob)          prob in (0,1), support {0,1,2,...}, P(X=k) = (1-prob) prob^k
//   uniform(lo, hi)          lo < hi, continuous
//
// All of them have a finite MGF in a neighborhood of the origin. Values are
// immutable after construction and safe to share across threads.
class WeightDistribution {
public:
    static WeightDistribution exponential(double rate) {
        require(std::isfinite(rate) && rate > 0.0, "exponential rate must be > 0");
        return WeightDistribution(Family::exponential, rate, 0.0);
    }

    static WeightDistribution gaussian(double mean, double stddev) {
        require(std::isfinite(mean), "gaussian mean must be finite");
        require(std::isfinite(stddev) && stddev > 0.0, "gaussian stddev must be > 0");
        return WeightDistribution(Family::gaussian, mean, stddev);
    }

    static WeightDistribution bernoulli(double prob) {
        require(std::isfinite(prob) && prob > 0.0 && prob < 1.0,
                "bernoulli prob must be in (0,1)");
        return WeightDistribution(Family::bernoulli, prob, 0.0);
    }

    static WeightDistribution geometric(double prob) {
        require(std::isfinite(prob) && prob > 0.0 && prob < 1.0,
                "geometric prob must be in (0,1)");
        return WeightDistribution(Family::geometric, prob, 0.0);
    }

    static WeightDistribution uniform(double lo, double hi) {
        require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
                "uniform bounds must satisfy lo < hi");
        return WeightDistribution(Family::uniform, lo, hi);
    }

    Family family() const { return family_; }

    double mean() const {
        switch (family_) {
            case Family::exponential: return 1.0 / a_;
            case Family::gaussian:    return a_;
            case Family::bernoulli:   return a_;
            case Family::geometric:   return a_ / (1.0 - a_);
            case Family::uniform:     return 0.5 * (a_ + b_);
        }
        unreachable();
    }

    double variance() const {
        switch (family_) {
            case Family::exponential: return 1.0 / (a_ * a_);
            case Family::gaussian:    return b_ * b_;
            case Family::bernoulli:   return a_ * (1.0 - a_);
            case Family::geometric:   return a_ / ((1.0 - a_) * (1.0 - a_));
            case Family::uniform:     return (b_ - a_) * (b_ - a_) / 12.0;
        }
        unreachable();
    }

    // Supremum of the set {nu : E[exp(nu X)] < inf}.
    double mgf_domain_sup() const {
        switch (family_) {
            case Family::exponential: return a_;
            case Family::geometric:   return -std::log(a_);
            default:                  return inf;
        }
    }

    // Smallest b with P[X <= b] = 1, or +inf.
    double essential_sup() const {
        switch (family_) {
            case Family::bernoulli: return 1.0;
            case Family::uniform:   return b_;
            default:                return inf;
        }
    }

    // Lambda(nu) = log E[exp(nu X)], in closed form. Throws std::domain_error
    // for nu at or beyond mgf_domain_sup().
    double log_mgf(double nu) const {
        check_domain(nu);
        switch (family_) {
            case Family::exponential:
                return -std::log1p(-nu / a_);
            case Family::gaussian:
                return a_ * nu + 0.5 * b_ * b_ * nu * nu;
            case Family::bernoulli:
                // log((1-q) + q e^nu) as a log-sum-exp of {log(1-q), log(q)+nu}
                return log_sum_exp(std::log1p(-a_), std::log(a_) + nu);
            case Family::geometric:
                // log(1-q) - log(1 - q e^nu); 1 - e^t = -expm1(t)
                return std::log1p(-a_) - std::log(-std::expm1(nu + std::log(a_)));
            case Family::uniform:
                return nu * a_ + log_expm1_over(nu * (b_ - a_));
        }
        unreachable();
    }

    // d/dnu log_mgf, closed form per family. Same domain as log_mgf.
    double log_mgf_derivative(double nu) const {
        check_domain(nu);
        switch (family_) {
            case Family::exponential:
                return 1.0 / (a_ - nu);
            case Family::gaussian:
                return a_ + b_ * b_ * nu;
            case Family::bernoulli:
                // q e^nu / (1-q+q e^nu) = 1 / (1 + exp(log((1-q)/q) - nu))
                return 1.0 / (1.0 + std::exp(std::log1p(-a_) - std::log(a_) - nu));
            case Family::geometric:
                // q e^nu / (1 - q e^nu)
                return 1.0 / std::expm1(-(nu + std::log(a_)));
            case Family::uniform:
                return a_ + (b_ - a_) * expm1_over_derivative(nu * (b_ - a_));
        }
        unreachable();
    }

    // One draw. Transforms are fixed per family (inverse CDF for exponential
    // and geometric, Box-Muller for gaussian) so a given stream state always
    // yields the same value.
    double sample_one(RandomStream& stream) const {
        switch (family_) {
            case Family::exponential:
                return -std::log(stream.uniform01_positive()) / a_;
            case Family::gaussian:
                return a_ + b_ * stream.normal();
            case Family::bernoulli:
                return stream.uniform01() < a_ ? 1.0 : 0.0;
            case Family::geometric:
                return std::floor(std::log(stream.uniform01_positive()) / std::log(a_));
            case Family::uniform:
                return a_ + (b_ - a_) * stream.uniform01();
        }
        unreachable();
    }

    std::vector<double> sample(RandomStream& stream, std::size_t count) const {
        std::vector<double> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) out.push_back(sample_one(stream));
        return out;
    }

    // e.g. "exponential(rate=2)"; used in error messages and config echoes.
    std::string describe() const {
        switch (family_) {
            case Family::exponential: return "exponential(rate=" + num(a_) + ")";
            case Family::gaussian:    return "gaussian(mean=" + num(a_) + ",stddev=" + num(b_) + ")";
            case Family::bernoulli:   return "bernoulli(prob=" + num(a_) + ")";
            case Family::geometric:   return "geometric(prob=" + num(a_) + ")";
            case Family::uniform:     return "uniform(lo=" + num(a_) + ",hi=" + num(b_) + ")";
        }
        unreachable();
    }

    double param_a() const { return a_; }
    double param_b() const { return b_; }

private:
    static constexpr double inf = std::numeric_limits<double>::infinity();

    WeightDistribution(Family f, double a, double b) : family_(f), a_(a), b_(b) {}

    static void require(bool ok, const char* msg) {
        if (!ok) throw std::invalid_argument(msg);
    }

    [[noreturn]] static void unreachable() { throw std::logic_error("corrupt family tag"); }

    void check_domain(double nu) const {
        const double sup = mgf_domain_sup();
        if (!(nu < sup))
            throw std::domain_error("log_mgf: nu=" + num(nu) + " is outside the MGF domain (sup=" +
                                    num(sup) + ") of " + describe());
    }

    static double log_sum_exp(double x, double y) {
        const double m = x > y ? x : y;
        return m + std::log(std::exp(x - m) + std::exp(y - m));
    }

    // log(expm1(w)/w), i.e. log M(nu) for uniform(0,1) at w = nu; continuous
    // through w = 0 where the value is 0.
    static double log_expm1_over(double w) {
        if (std::abs(w) < 1e-4) return 0.5 * w + w * w / 24.0;
        if (w > 0.0) return w + std::log1p(-std::exp(-w)) - std::log(w);
        return std::log(-std::expm1(w)) - std::log(-w);
    }

    // d/dw log(expm1(w)/w) = 1/(1-e^{-w}) - 1/w, in (0,1), value 1/2 at w = 0.
    static double expm1_over_derivative(double w) {
        if (std::abs(w) < 1e-4) return 0.5 + w / 12.0 - w * w * w / 720.0;
        return 1.0 / (-std::expm1(-w)) - 1.0 / w;
    }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", v);
        return buf;
    }

    Family family_;
    double a_;
    double b_;
};

} // namespace lpp
