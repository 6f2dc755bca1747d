#pragma once

#include <cstdint>

#include "tops/types.hpp"

namespace tops {

// Deterministic keyed random stream (splitmix64). Streams for parallel
// Monte-Carlo trials are keyed by (seed, trial, role) so trial order never
// changes the draws a trial sees.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed)) {}
    Rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t role)
        : state_(mix(mix(mix(seed) ^ trial) ^ role)) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) %
               n;
    }

    // Standard normal (Box-Muller; portable across standard libraries).
    double normal();

    // Complex Gaussian with total variance `var` (var/2 per real part).
    cx cnormal(double var);

  private:
    static std::uint64_t mix(std::uint64_t x) {
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace tops
