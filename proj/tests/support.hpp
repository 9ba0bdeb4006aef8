#pragma once

// Shared fixtures: frozen expected values (computed independently with
// high-precision arithmetic) and brute-force oracles kept deliberately
// separate from the implementation paths they check.

#include "lpp/lattice.hpp"
#include "lpp/lpp_dp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace testsupport {

// ---------------------------------------------------------------------------
// frozen constants (30-digit reference arithmetic, rounded to double)

inline constexpr double kLn2 = 0.6931471805599453;
inline constexpr double kRateExp1At2 = 0.30685281944005469;      // 2 - 1 - ln 2
inline constexpr double kRateExp1At3 = 0.90138771133189031;      // 3 - 1 - ln 3
inline constexpr double kInvRateExp1AtLn2 = 2.6783469900166607;  // root of x-1-ln x = ln 2
inline constexpr double kBoundExp1Diagonal = 5.3566939800333213; // 2 * previous
inline constexpr double kSqrt2Ln2 = 1.1774100225154747;
inline constexpr double kEntropyHalfQuarterQuarter = 1.0397207708399179;  // (3/2) ln 2
inline constexpr double kEntropyBound321 = 432.0;  // exp(6 H(1/2,1/3,1/6)) = 2^3 3^2 6
inline constexpr double kChernoffL8 = 0.18901588002126312;   // exp(-8 (I(3) - ln 2)), exp(1)
inline constexpr double kChernoffL16 = 0.035727002900212533;
inline constexpr double kChernoffL32 = 0.0012764187362317948;
inline constexpr double kWilson5of10Low = 0.23659309051256400;
inline constexpr double kWilson5of10High = 0.76340690948743600;

// ---------------------------------------------------------------------------
// oracles

// Maximum path sum by explicit enumeration: walks every monotone path and
// adds the weights of the visited points after the origin. Independent of
// the DP recurrence.
inline double brute_force_last_passage(const lpp::WeightField& field, const lpp::LatticePoint& z,
                                       std::int64_t step_cap = 16) {
    const auto paths = lpp::enumerate_paths(z, step_cap);
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> v(z.dim());
    for (const lpp::DirectedPath& path : paths) {
        std::fill(v.begin(), v.end(), 0);
        double sum = 0.0;
        for (int step : path) {
            ++v[static_cast<std::size_t>(step)];
            sum += field.value_at(std::span<const std::int64_t>(v));
        }
        best = std::max(best, sum);  // the empty path (z = origin) contributes 0
    }
    return best;
}

// Best path sum strictly between two lattice points on a common field:
// S(from) = 0, S(v) = X(v) + max over admissible predecessors. Used by the
// superadditivity check.
inline double best_path_sum_between(const lpp::WeightField& field, const lpp::LatticePoint& from,
                                    const lpp::LatticePoint& to) {
    const std::size_t d = from.dim();
    std::vector<std::int64_t> extent(d);
    for (std::size_t i = 0; i < d; ++i) extent[i] = to[i] - from[i];

    std::vector<std::uint64_t> stride(d, 1);
    std::uint64_t cells = 1;
    for (std::size_t i = d; i-- > 0;) {
        stride[i] = cells;
        cells *= static_cast<std::uint64_t>(extent[i]) + 1;
    }

    std::vector<double> value(cells, 0.0);
    std::vector<std::int64_t> offset(d, 0);
    std::vector<std::int64_t> site(d);
    for (std::uint64_t k = 0; k < cells; ++k) {
        if (k != 0) {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < d; ++i)
                if (offset[i] > 0) best = std::max(best, value[k - stride[i]]);
            for (std::size_t i = 0; i < d; ++i) site[i] = from[i] + offset[i];
            value[k] = field.value_at(std::span<const std::int64_t>(site)) + best;
        }
        for (std::size_t i = d; i-- > 0;) {
            if (offset[i] < extent[i]) {
                ++offset[i];
                break;
            }
            offset[i] = 0;
        }
    }
    return value[cells - 1];
}

// All lattice points of dimension d with |z|_1 <= max_total, lexicographic.
inline std::vector<lpp::LatticePoint> lattice_points_up_to(std::size_t d, std::int64_t max_total) {
    std::vector<lpp::LatticePoint> out;
    std::vector<std::int64_t> z(d, 0);
    std::function<void(std::size_t, std::int64_t)> fill = [&](std::size_t i, std::int64_t left) {
        if (i + 1 == d) {
            for (std::int64_t c = 0; c <= left; ++c) {
                z[i] = c;
                out.emplace_back(z);
            }
            return;
        }
        for (std::int64_t c = 0; c <= left; ++c) {
            z[i] = c;
            fill(i + 1, left - c);
        }
    };
    fill(0, max_total);
    return out;
}

} // namespace testsupport
