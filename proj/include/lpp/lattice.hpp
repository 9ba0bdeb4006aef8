#pragma once

#include "lpp/simplex.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lpp {

using BigInt = boost::multiprecision::cpp_int;

// Nonnegative integer lattice target.
class LatticePoint {
public:
    explicit LatticePoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) throw std::invalid_argument("lattice point must have d >= 1");
        for (std::int64_t c : coords_)
            if (c < 0) throw std::invalid_argument("lattice point entries must be >= 0");
    }

    std::size_t dim() const { return coords_.size(); }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<std::int64_t>& coords() const { return coords_; }

    // Total number of unit steps to reach this point.
    std::int64_t l1() const {
        std::int64_t s = 0;
        for (std::int64_t c : coords_) s += c;
        return s;
    }

    bool operator==(const LatticePoint& other) const { return coords_ == other.coords_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(coords_[i]);
        }
        return s + ")";
    }

private:
    std::vector<std::int64_t> coords_;
};

// A directed path as the sequence of step dimensions (0-based), one per unit
// step; vertices are recovered by prefix sums.
using DirectedPath = std::vector<int>;

// A rational point x/m on the simplex approximating p.
struct RationalDirection {
    ProbabilityVector p;   // the direction that was approximated
    std::int64_t m;        // scale, = |x|_1
    LatticePoint x;        // integer vector with x/m ~= p
    double max_error;      // max-norm of x/m - p
};

// Exact multinomial path count |z|_1! / prod z_i!.
inline BigInt count_paths(const LatticePoint& z) {
    BigInt result = 1;
    std::int64_t total = 0;
    for (std::size_t i = 0; i < z.dim(); ++i) {
        total += z[i];
        // multiply by C(total, z_i); each partial product is an exact integer
        BigInt binom = 1;
        for (std::int64_t k = 1; k <= z[i]; ++k) {
            binom *= total - z[i] + k;
            binom /= k;
        }
        result *= binom;
    }
    return result;
}

class PathCapExceeded : public std::runtime_error {
public:
    PathCapExceeded(const LatticePoint& z, std::int64_t cap)
        : std::runtime_error("path enumeration cap exceeded for z=" + z.to_string() + ": " +
                             std::to_string(z.l1()) + " steps > cap " + std::to_string(cap) +
                             " (would enumerate " + count_paths(z).str() + " paths)"),
          path_count(count_paths(z)) {}

    BigInt path_count;
};

// All distinct monotone paths from the origin to z, in lexicographic order of
// their step sequences. Guarded by a total-step cap since the count grows as
// a multinomial.
inline std::vector<DirectedPath> enumerate_paths(const LatticePoint& z,
                                                 std::int64_t step_cap = 16) {
    if (z.l1() > step_cap) throw PathCapExceeded(z, step_cap);

    std::vector<DirectedPath> paths;
    paths.reserve(count_paths(z).convert_to<std::size_t>());

    std::vector<std::int64_t> remaining = z.coords();
    DirectedPath current;
    current.reserve(static_cast<std::size_t>(z.l1()));

    std::function<void(std::int64_t)> extend = [&](std::int64_t steps_left) {
        if (steps_left == 0) {
            paths.push_back(current);
            return;
        }
        for (std::size_t dim = 0; dim < remaining.size(); ++dim) {
            if (remaining[dim] == 0) continue;
            --remaining[dim];
            current.push_back(static_cast<int>(dim));
            extend(steps_left - 1);
            current.pop_back();
            ++remaining[dim];
        }
    };
    extend(z.l1());
    return paths;
}

// exp(|z|_1 * H(z/|z|_1)), the entropy upper estimate of the path count.
inline double entropy_count_bound(const LatticePoint& z) {
    const std::int64_t n = z.l1();
    if (n < 1) throw std::invalid_argument("entropy_count_bound requires |z|_1 >= 1");
    std::vector<double> p(z.dim());
    for (std::size_t i = 0; i < z.dim(); ++i)
        p[i] = static_cast<double>(z[i]) / static_cast<double>(n);
    return std::exp(static_cast<double>(n) * entropy(ProbabilityVector(std::move(p))));
}

// Best rational approximation x/m of p with m <= max_denominator, by
// exhaustive scan over m. For each m the rounded vector is re-balanced to sum
// exactly m (largest-remainder adjustments), the candidate error is the
// max-norm of x/m - p, and ties go to the smaller m.
inline RationalDirection rationalize(const ProbabilityVector& p, std::int64_t max_denominator) {
    if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");

    const std::size_t d = p.dim();
    std::int64_t best_m = -1;
    double best_error = std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> best_x;

    std::vector<std::int64_t> x(d);
    for (std::int64_t m = 1; m <= max_denominator; ++m) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = std::llround(static_cast<double>(m) * p[i]);
            sum += x[i];
        }
        // re-balance to sum m, adjusting the entry with the largest rounding slack
        while (sum != m) {
            const bool add = sum < m;
            std::size_t pick = 0;
            double pick_slack = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < d; ++i) {
                const double target = static_cast<double>(m) * p[i];
                const double slack = add ? target - static_cast<double>(x[i])
                                         : static_cast<double>(x[i]) - target;
                if (!add && x[i] == 0) continue;
                if (slack > pick_slack) {
                    pick_slack = slack;
                    pick = i;
                }
            }
            x[pick] += add ? 1 : -1;
            sum += add ? 1 : -1;
        }
        double err = 0.0;
        for (std::size_t i = 0; i < d; ++i)
            err = std::max(err, std::abs(static_cast<double>(x[i]) / static_cast<double>(m) - p[i]));
        if (err < best_error) {
            best_error = err;
            best_m = m;
            best_x = x;
        }
    }
    return RationalDirection{p, best_m, LatticePoint(std::move(best_x)), best_error};
}

} // namespace lpp
