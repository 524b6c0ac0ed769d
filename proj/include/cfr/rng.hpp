#pragma once

#include <cstdint>
#include <random>

namespace cfr {

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Single random source for the whole library. Every stochastic operation
// draws through this wrapper so a run is reproducible from one seed.
// mt19937_64 output is fully specified by the standard, and the scaling
// below avoids the implementation-defined std:: distributions, so streams
// are identical across compilers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // uniform on {0, ..., n-1}
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    bool coin() { return bernoulli(0.5); }

    // Seed for an unrelated stream, e.g. one per (generation, agent).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        return mix64(mix64(mix64(seed) ^ a) ^ b);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace cfr
