#pragma once

#include <cmath>
#include <cstdint>

namespace flapevo {

// Deterministic random stream used everywhere randomness is needed.
//
// The evolutionary loop derives an independent stream per (seed, phase,
// generation, offspring index), so results do not depend on evaluation order
// or thread scheduling. We implement the generator and the distributions
// ourselves (xoshiro256** plus explicit uniform/normal transforms) instead of
// using <random>, because std:: distribution outputs are implementation
// defined and the project promises byte-identical output files for a given
// seed.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 1) {
        // splitmix64 expansion of the seed into the xoshiro state; never all-zero.
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    // Stream derivation: mixes the tag words into a fresh, statistically
    // independent stream. Used as derive(seed, phase, generation, index).
    static RngStream derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        std::uint64_t x = seed;
        std::uint64_t h = splitmix64(x);
        x ^= a + 0x9e3779b97f4a7c15ull;
        h ^= splitmix64(x);
        x ^= b + 0xbf58476d1ce4e5b9ull;
        h ^= splitmix64(x);
        x ^= c + 0x94d049bb133111ebull;
        h ^= splitmix64(x);
        return RngStream(h);
    }

    std::uint64_t next_u64() {
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

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n). Requires n > 0.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
    }

    bool coin() { return (next_u64() >> 63) != 0; }

    // Gaussian via the Marsaglia polar method. The spare value is discarded so
    // the draw count per call is state-free apart from the rejection loop.
    double normal(double mean, double sigma) {
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return mean + sigma * u * std::sqrt(-2.0 * std::log(s) / s);
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
};

}  // namespace flapevo
