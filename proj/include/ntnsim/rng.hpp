#ifndef NTNSIM_RNG_HPP
#define NTNSIM_RNG_HPP

// Seedable random number generator with platform-independent distributions.
//
// SplitMix64 core with hand-rolled uniform/Gaussian draws, so identical seeds
// produce identical streams on every standard library. fork(key) derives an
// independent substream without disturbing the parent, which is how
// per-user and per-step streams are split off one master seed.

#include <cstdint>
#include <cmath>

#include "ntnsim/constants.hpp"

namespace ntnsim {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {
        // Scramble so that nearby seeds give unrelated streams.
        splitmix64_next(state_);
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi], inclusive, bias-free via rejection.
    int uniform_int(int lo, int hi) {
        const std::uint64_t range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return lo + static_cast<int>(v % range);
    }

    // Gaussian via Box-Muller; draws two uniforms per call, no caching.
    double gaussian(double mean, double sigma) {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
        return mean + sigma * z;
    }

    // Independent substream keyed off this generator's seed. Does not
    // advance the parent.
    Rng fork(std::uint64_t key) const {
        std::uint64_t s = seed_ ^ (0xD6E8FEB86659FD93ull * (key + 1));
        splitmix64_next(s);
        return Rng(s);
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace ntnsim

#endif  // NTNSIM_RNG_HPP
