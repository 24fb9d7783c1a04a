#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace optomem {

// Deterministic random source. All stochastic behavior in the library draws
// from an injected RandomSource, so identical seeds reproduce identical runs
// bit for bit (mt19937_64 output is pinned by the standard).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t u64() { return engine_(); }

    // Uniform on the open interval (0, 1); never returns 0 or 1, so logs of
    // either u or 1-u stay finite.
    double uniform01() {
        return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52;
    }

    // Exponential with the given mean; strictly positive.
    double exponential(double mean) { return -mean * std::log(uniform01()); }

    // Uniform integer in [0, n).
    std::uint32_t pick(std::uint32_t n) {
        return static_cast<std::uint32_t>(engine_() % n);
    }

    bool chance(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

// Derives an independent stream seed (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace optomem
