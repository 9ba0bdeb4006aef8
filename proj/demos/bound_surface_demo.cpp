// Prints the entropy bound over the d=2 simplex for unit-rate exponential
// weights, next to the exact shape (sqrt(p1)+sqrt(p2))^2 known for that
// family, so the gap is visible at a glance.

#include "lpp/bound.hpp"

#include <cmath>
#include <cstdio>

int main() {
    const auto dist = lpp::WeightDistribution::exponential(1.0);
    const auto rows = lpp::bound_on_simplex_grid(dist, 2, 10);

    std::printf("%8s %8s %12s %12s %8s\n", "p1", "p2", "bound", "exact", "gap");
    for (const auto& row : rows) {
        const double exact =
            (std::sqrt(row.p[0]) + std::sqrt(row.p[1])) * (std::sqrt(row.p[0]) + std::sqrt(row.p[1]));
        std::printf("%8.3f %8.3f %12.6f %12.6f %8.4f\n", row.p[0], row.p[1], row.bound, exact,
                    row.bound - exact);
    }
    return 0;
}
