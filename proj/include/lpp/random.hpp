#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace lpp {

// SplitMix64 finalizer (Steele/Lea/Flood). Used only to mix seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic, counter-addressable random stream.
//
// A stream is fully defined by (master_seed, stream_index): both are passed
// through SplitMix64, xor-combined, and mixed once more into the single
// 64-bit seed of a std::mt19937_64 engine. The engine and every draw
// transform below are fixed, so a given (seed, index) pair produces the same
// sequence on any conforming platform, independent of thread scheduling.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : engine_(splitmix64(splitmix64(master_seed) ^ splitmix64(stream_index))) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe as a log() argument.
    double uniform01_positive() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; draws come in pairs, the spare is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform01_positive()));
        const double a = two_pi * uniform01();
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Uniform index in [0, n). Modulo bias is irrelevant at the sizes used here.
    std::uint64_t uniform_below(std::uint64_t n) { return engine_() % n; }

private:
    static constexpr double two_pi = 6.283185307179586476925286766559;

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace lpp
