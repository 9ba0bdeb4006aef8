#pragma once

#include "lpp/bound.hpp"
#include "lpp/lattice.hpp"
#include "lpp/lpp_dp.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace lpp {

// Growth-rate statistic at one scale n.
struct Estimate {
    double value;         // mean of T(target)/n over replicates
    double stderr_value;  // normal-theory standard error (0 when replicates < 2)
    int replicates;
    std::int64_t n;
    LatticePoint target;
};

struct TailExperimentResult {
    std::int64_t l;
    double alpha;
    double empirical_prob;
    double ci_low;   // 95% Wilson score interval; [0,1] when replicates < 2
    double ci_high;
    double chernoff_bound;  // exp(-l (I(alpha) - H(p))) when I(alpha) > H(p), else 1
    int replicates;
};

struct ComparisonRow {
    std::vector<double> direction;
    Estimate estimate;
    double bound;
    double gap;  // bound - estimate
};

struct WilsonInterval {
    double low;
    double high;
};

// 95% Wilson score interval; well-behaved at zero counts.
inline WilsonInterval wilson_interval(std::int64_t successes, std::int64_t trials) {
    if (trials < 1) throw std::invalid_argument("wilson_interval requires trials >= 1");
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    // at the extremes the exact endpoint is 0 or 1; don't leave rounding dust
    const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

// Elementwise floor(n * x) as a lattice target.
inline LatticePoint floor_scaled(const std::vector<double>& x, std::int64_t n) {
    std::vector<std::int64_t> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        z[i] = static_cast<std::int64_t>(std::floor(static_cast<double>(n) * x[i]));
    return LatticePoint(std::move(z));
}

namespace detail {

// Deterministic parallel map: every index writes its own output slot and the
// work order never affects results, so any thread count gives identical
// output. Worker exceptions are rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::int64_t count, int threads, Fn&& fn) {
    if (threads < 2 || count < 2) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, count));
    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Pairwise summation: order-stable, accurate, and independent of how the
// values were produced.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline std::pair<double, double> mean_and_stderr(std::span<const double> values) {
    const std::size_t r = values.size();
    const double mean = pairwise_sum(values) / static_cast<double>(r);
    if (r < 2) return {mean, 0.0};
    std::vector<double> sq(r);
    for (std::size_t i = 0; i < r; ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
    const double var = pairwise_sum(sq) / static_cast<double>(r - 1);
    return {mean, std::sqrt(var / static_cast<double>(r))};
}

inline void check_direction(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("direction must have d >= 1 entries");
    double largest = 0.0;
    for (double v : x) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("direction entries must be finite and >= 0");
        largest = std::max(largest, v);
    }
    if (largest == 0.0) throw std::invalid_argument("direction must be nonzero");
}

// One block of replicates. Replicate r draws from the stream addressed by
// (master_seed, r), so a replicate's field depends only on those two values:
// not on worker scheduling, and not on where its block sits in a schedule.
inline std::vector<double> replicate_passage_times(const WeightDistribution& dist,
                                                   const LatticePoint& corner, int replicates,
                                                   std::uint64_t master_seed, int threads) {
    std::vector<double> out(static_cast<std::size_t>(replicates));
    parallel_for(replicates, threads, [&](std::int64_t r) {
        RandomStream stream(master_seed, static_cast<std::uint64_t>(r));
        out[static_cast<std::size_t>(r)] = last_passage_sampled(dist, corner, stream);
    });
    return out;
}

} // namespace detail

// Mean of T(floor(n x))/n with standard error, for each n in the schedule.
// Fresh independent replicates per n; deterministic for a fixed master_seed
// at any thread count.
inline std::vector<Estimate> estimate_growth_rate(const WeightDistribution& dist,
                                                  const std::vector<double>& x,
                                                  const std::vector<std::int64_t>& n_schedule,
                                                  int replicates, std::uint64_t master_seed,
                                                  int threads = 1) {
    detail::check_direction(x);
    if (n_schedule.empty()) throw std::invalid_argument("n_schedule must be non-empty");
    for (std::size_t i = 0; i < n_schedule.size(); ++i) {
        if (n_schedule[i] < 1) throw std::invalid_argument("n_schedule entries must be >= 1");
        if (i > 0 && n_schedule[i] <= n_schedule[i - 1])
            throw std::invalid_argument("n_schedule must be strictly increasing");
    }
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    for (std::int64_t n : n_schedule) {
        try {
            checked_cell_count(floor_scaled(x, n));
        } catch (const MemoryCapExceeded& e) {
            throw std::invalid_argument("n=" + std::to_string(n) + ": " + e.what());
        }
    }

    std::vector<Estimate> out;
    out.reserve(n_schedule.size());
    for (std::size_t s = 0; s < n_schedule.size(); ++s) {
        const std::int64_t n = n_schedule[s];
        LatticePoint z = floor_scaled(x, n);
        std::vector<double> values =
            detail::replicate_passage_times(dist, z, replicates, master_seed, threads);
        for (double& v : values) v /= static_cast<double>(n);
        auto [mean, se] = detail::mean_and_stderr(values);
        out.push_back(Estimate{mean, se, replicates, n, std::move(z)});
    }
    return out;
}

// Empirical P[T(l p)/l > alpha] with a 95% Wilson interval, next to the
// union-plus-Chernoff decay estimate exp(-l (I(alpha) - H(p))). Each l must
// be a multiple of the rationalization scale m so that l p is a lattice
// point (z = (l/m) x exactly).
inline std::vector<TailExperimentResult> tail_probability_experiment(
    const WeightDistribution& dist, const RationalDirection& direction, double alpha,
    const std::vector<std::int64_t>& l_schedule, int replicates, std::uint64_t master_seed,
    int threads = 1) {
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (l_schedule.empty()) throw std::invalid_argument("l_schedule must be non-empty");
    for (std::int64_t l : l_schedule) {
        if (l < 1) throw std::invalid_argument("l_schedule entries must be >= 1");
        if (l % direction.m != 0)
            throw std::invalid_argument(
                "l=" + std::to_string(l) + " is not a multiple of the rationalization scale m=" +
                std::to_string(direction.m));
    }

    const RateFunctionHandle handle(dist);
    const double h = entropy(direction.p);
    const double rate_alpha = handle.rate(alpha);

    std::vector<TailExperimentResult> out;
    out.reserve(l_schedule.size());
    for (std::size_t s = 0; s < l_schedule.size(); ++s) {
        const std::int64_t l = l_schedule[s];
        const std::int64_t n = l / direction.m;
        std::vector<std::int64_t> coords(direction.x.dim());
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = n * direction.x[i];
        const LatticePoint z(std::move(coords));

        std::vector<double> values =
            detail::replicate_passage_times(dist, z, replicates, master_seed, threads);
        std::int64_t exceed = 0;
        for (double t : values)
            if (t / static_cast<double>(l) > alpha) ++exceed;

        const double phat = static_cast<double>(exceed) / static_cast<double>(replicates);
        WilsonInterval ci{0.0, 1.0};  // degenerate at a single replicate
        if (replicates >= 2) ci = wilson_interval(exceed, replicates);
        const double chernoff =
            rate_alpha > h ? std::exp(-static_cast<double>(l) * (rate_alpha - h)) : 1.0;
        out.push_back(
            TailExperimentResult{l, alpha, phat, ci.low, ci.high, chernoff, replicates});
    }
    return out;
}

// Bound vs. simulation at one scale, one row per direction.
inline std::vector<ComparisonRow> compare_bound_to_simulation(
    const WeightDistribution& dist, const std::vector<std::vector<double>>& directions,
    std::int64_t n, int replicates, std::uint64_t master_seed, int threads = 1) {
    if (directions.empty()) throw std::invalid_argument("directions must be non-empty");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    for (const auto& x : directions) detail::check_direction(x);

    const RateFunctionHandle handle(dist);
    std::vector<ComparisonRow> out;
    out.reserve(directions.size());
    for (std::size_t dix = 0; dix < directions.size(); ++dix) {
        const std::vector<double>& x = directions[dix];
        LatticePoint z = floor_scaled(x, n);
        try {
            checked_cell_count(z);
        } catch (const MemoryCapExceeded& e) {
            throw std::invalid_argument("direction " + std::to_string(dix) + ": " + e.what());
        }
        std::vector<double> values =
            detail::replicate_passage_times(dist, z, replicates, master_seed, threads);
        for (double& v : values) v /= static_cast<double>(n);
        auto [mean, se] = detail::mean_and_stderr(values);
        const BoundReport report = evaluate_bound(handle, x);
        out.push_back(ComparisonRow{x, Estimate{mean, se, replicates, n, std::move(z)},
                                    report.bound_on_g, report.bound_on_g - mean});
    }
    return out;
}

} // namespace lpp
