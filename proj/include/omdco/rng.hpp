#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

// Seeded randomness utilities.
//
// Streams are derived from a master seed plus a path of 64-bit tags, so a
// trial's algorithm stream and its adversary stream never collide and runs
// are reproducible bit-for-bit. The engine is std::mt19937_64; the mappings
// to uniform/gaussian variates are implemented here rather than through
// std::*_distribution, whose output is implementation-defined.

namespace omdco {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Fold a tag path into a master seed. derive_seed(s, {a, b}) differs from
// derive_seed(s, {b, a}) and from derive_seed(s, {a}).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    for (std::uint64_t tag : path) {
        s = h ^ tag;
        h = splitmix64(s);
    }
    return h;
}

// Stream tags used by the harness.
inline constexpr std::uint64_t kAlgorithmStreamTag = 0x414c474fULL;  // "ALGO"
inline constexpr std::uint64_t kAdversaryStreamTag = 0x41445653ULL;  // "ADVS"

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in {0, ..., n-1}.
    int uniform_int(int n) {
        int v = static_cast<int>(uniform() * static_cast<double>(n));
        return v < n ? v : n - 1;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal via Box-Muller; no cached spare, so draw order is
    // independent of call parity.
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace omdco
