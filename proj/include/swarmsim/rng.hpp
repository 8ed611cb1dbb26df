#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace swarmsim {

// Identity string recorded in dataset metadata so datasets are self-describing.
inline constexpr const char* kPrngId = "splitmix64+xoshiro256**";

// splitmix64 (Steele, Lea, Flood 2014). Used as the seed mixer and to expand
// a 64-bit seed into generator state.
constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stable 64-bit mix of an ordered tuple of values. Each part is absorbed into
// a splitmix64 walk, so (a,b) and (b,a) mix differently.
constexpr std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t state = 0x8f5e1c6d2b9a4e37ULL;
    for (std::uint64_t p : parts) {
        state ^= splitmix64_next(state) ^ p;
        (void)splitmix64_next(state);
    }
    return splitmix64_next(state);
}

// xoshiro256** 1.0 (Blackman, Vigna 2018), seeded through splitmix64.
// All distributions are hand-rolled on top of next() so sequences do not
// depend on any standard-library implementation.
class Rng {
  public:
    explicit constexpr Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64_next(sm);
    }

    constexpr std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    // Unbiased integer in [0, n) by rejection on the top of the range.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = -n % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // Normal draw via the Marsaglia polar method. Each call runs its own
    // accept loop and discards the paired variate, so consumption is a pure
    // function of the call sequence.
    double normal(double mean, double sigma) {
        for (;;) {
            double u = uniform(-1.0, 1.0);
            double v = uniform(-1.0, 1.0);
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                return mean + sigma * u * std::sqrt(-2.0 * std::log(s) / s);
            }
        }
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4] = {};
};

}  // namespace swarmsim
