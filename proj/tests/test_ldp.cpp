#include "lpp/ldp.hpp"

#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using lpp::RateFunctionHandle;
using lpp::rate_closed_form;
using lpp::WeightDistribution;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("rate values frozen from closed forms", "[ldp]") {
    const RateFunctionHandle exp1(WeightDistribution::exponential(1.0));
    REQUIRE_THAT(exp1.rate(2.0), WithinAbs(testsupport::kRateExp1At2, 1e-10));
    REQUIRE_THAT(exp1.rate(3.0), WithinAbs(testsupport::kRateExp1At3, 1e-10));
    REQUIRE(exp1.rate(1.0) == 0.0);  // x = mean
    REQUIRE(exp1.rate(0.2) == 0.0);

    const RateFunctionHandle gauss(WeightDistribution::gaussian(0.0, 1.0));
    REQUIRE_THAT(gauss.rate(1.5), WithinAbs(1.125, 1e-10));

    const RateFunctionHandle bern(WeightDistribution::bernoulli(0.5));
    REQUIRE_THAT(bern.rate(1.0), WithinAbs(testsupport::kLn2, 1e-12));
    REQUIRE(bern.rate(1.5) == kInf);
    REQUIRE_THAT(bern.rate_sup(), WithinAbs(testsupport::kLn2, 1e-12));
}

TEST_CASE("numerical rate tracks the closed forms on a grid", "[ldp]") {
    for (const auto& dist :
         {WeightDistribution::exponential(1.0), WeightDistribution::gaussian(0.0, 1.0),
          WeightDistribution::bernoulli(0.5)}) {
        const RateFunctionHandle handle(dist);
        const double mu = handle.mean();
        const double sigma = std::sqrt(dist.variance());
        const double hi = std::min(handle.x_max(), mu + 10.0 * sigma);
        for (int k = 1; k <= 200; ++k) {
            const double x = mu + (hi - mu) * k / 200.0;
            const auto expected = rate_closed_form(dist, x);
            REQUIRE(expected.has_value());
            INFO(dist.describe() << " x=" << x);
            REQUIRE_THAT(handle.rate(x), WithinAbs(*expected, 1e-6));
        }
    }
}

TEST_CASE("closed forms cover exactly the documented families", "[ldp]") {
    REQUIRE_THAT(*rate_closed_form(WeightDistribution::exponential(1.0), 2.0),
                 WithinAbs(testsupport::kRateExp1At2, 1e-15));
    REQUIRE(*rate_closed_form(WeightDistribution::gaussian(0.0, 1.0), 0.0) == 0.0);
    REQUIRE_FALSE(rate_closed_form(WeightDistribution::uniform(0.0, 1.0), 0.9).has_value());
    REQUIRE_FALSE(rate_closed_form(WeightDistribution::geometric(0.5), 2.0).has_value());
}

TEST_CASE("rate is monotone and convex above the mean", "[ldp]") {
    for (const auto& dist :
         {WeightDistribution::exponential(1.0), WeightDistribution::geometric(0.5),
          WeightDistribution::uniform(0.0, 2.0), WeightDistribution::gaussian(1.0, 2.0)}) {
        const RateFunctionHandle handle(dist);
        const double mu = handle.mean();
        const double hi = std::isfinite(handle.x_max()) ? handle.x_max() : mu + 6.0;
        double prev = 0.0;
        for (int k = 1; k <= 100; ++k) {
            const double x = mu + (hi - mu) * k / 101.0;
            const double r = handle.rate(x);
            REQUIRE(r >= prev - 1e-12);
            prev = r;
        }
        // midpoint convexity on a coarser mesh
        for (int k = 1; k + 2 <= 100; ++k) {
            const double x1 = mu + (hi - mu) * k / 101.0;
            const double x2 = mu + (hi - mu) * (k + 2) / 101.0;
            const double mid = handle.rate(0.5 * (x1 + x2));
            REQUIRE(mid <= 0.5 * (handle.rate(x1) + handle.rate(x2)) + 1e-9);
        }
    }
}

TEST_CASE("inverse hits frozen reference points", "[ldp]") {
    const RateFunctionHandle exp1(WeightDistribution::exponential(1.0));
    REQUIRE_THAT(exp1.rate_inverse_plus(testsupport::kLn2),
                 WithinAbs(testsupport::kInvRateExp1AtLn2, 2e-9));
    REQUIRE(exp1.rate_inverse_plus(0.0) == 1.0);

    const RateFunctionHandle gauss(WeightDistribution::gaussian(0.0, 1.0));
    REQUIRE_THAT(gauss.rate_inverse_plus(testsupport::kLn2),
                 WithinAbs(testsupport::kSqrt2Ln2, 2e-9));

    const RateFunctionHandle bern(WeightDistribution::bernoulli(0.5));
    REQUIRE(bern.rate_inverse_plus(testsupport::kLn2) == 1.0);  // saturates at the support edge
    REQUIRE(bern.rate_inverse_plus(5.0) == 1.0);

    REQUIRE_THROWS_AS(exp1.rate_inverse_plus(-0.1), std::invalid_argument);
}

TEST_CASE("rate and inverse round-trip", "[ldp]") {
    for (const auto& dist :
         {WeightDistribution::exponential(1.0), WeightDistribution::gaussian(0.0, 1.0),
          WeightDistribution::geometric(0.5), WeightDistribution::uniform(0.0, 2.0),
          WeightDistribution::bernoulli(0.5)}) {
        const RateFunctionHandle handle(dist);
        const double beta_hi =
            std::isfinite(handle.rate_sup()) ? 0.9 * handle.rate_sup() : 3.0;
        for (int k = 1; k <= 50; ++k) {
            const double beta = beta_hi * k / 50.0;
            const double theta = handle.rate_inverse_plus(beta);
            INFO(dist.describe() << " beta=" << beta);
            REQUIRE_THAT(handle.rate(theta), WithinAbs(beta, 1e-8));
        }
    }
}

TEST_CASE("degenerate limits behave as documented", "[ldp]") {
    const RateFunctionHandle unif(WeightDistribution::uniform(0.0, 2.0));
    REQUIRE(unif.rate_sup() == kInf);     // continuous at the edge: no atom
    REQUIRE(unif.rate(2.0) == kInf);
    REQUIRE(unif.rate(2.5) == kInf);
    REQUIRE_FALSE(unif.inverse_saturates(100.0));
    REQUIRE(unif.rate_inverse_plus(100.0) < 2.0);

    const RateFunctionHandle bern(WeightDistribution::bernoulli(0.25));
    REQUIRE_THAT(bern.rate_sup(), WithinAbs(-std::log(0.25), 1e-12));
    REQUIRE(bern.inverse_saturates(1.51));   // > log 4
    REQUIRE_FALSE(bern.inverse_saturates(1.0));
}
