// Watches (1/n) E[T(n,n)] climb toward its limit (4 for unit-rate exponential
// weights) along a doubling schedule, with the entropy bound as the ceiling.

#include "lpp/montecarlo.hpp"

#include <cstdio>

int main() {
    const auto dist = lpp::WeightDistribution::exponential(1.0);
    const std::vector<double> diagonal{1.0, 1.0};

    const double bound = lpp::evaluate_bound(dist, diagonal).bound_on_g;
    std::printf("entropy bound on g(1,1): %.6f\n\n", bound);

    const auto estimates =
        lpp::estimate_growth_rate(dist, diagonal, {25, 50, 100, 200, 400, 800}, 40, 2024, 4);
    std::printf("%6s %10s %10s\n", "n", "estimate", "stderr");
    for (const auto& est : estimates)
        std::printf("%6lld %10.5f %10.5f\n", static_cast<long long>(est.n), est.value,
                    est.stderr_value);
    return 0;
}
