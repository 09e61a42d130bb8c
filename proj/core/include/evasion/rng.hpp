#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "evasion/errors.hpp"

namespace evasion {

/// Deterministic random source. Every distribution is built directly on the
/// raw mt19937_64 output stream, so a fixed seed reproduces the exact same
/// draw sequence on any platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform index in [0, n). Rejection sampling, no modulo bias.
    std::size_t uniform_index(std::size_t n) {
        if (n == 0)
            throw ContractError("uniform_index: n must be positive");
        const std::uint64_t un = n;
        const std::uint64_t bound = UINT64_MAX - UINT64_MAX % un;
        std::uint64_t v = engine_();
        while (v >= bound)
            v = engine_();
        return static_cast<std::size_t>(v % un);
    }

    /// Gaussian draw via Box-Muller (cosine branch only, two raw draws per
    /// call, no cached state).
    double normal(double mean, double stddev) {
        const double u1 = 1.0 - uniform(); // (0, 1], keeps log() finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.283185307179586476925286766559;
        return mean + stddev * r * std::cos(two_pi * u2);
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            using std::swap;
            swap(v[i - 1], v[uniform_index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stable per-cell seed: hash of the master seed and the experiment
/// coordinate (dataset, defender, method, run index).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view dataset,
                                 std::string_view defender, std::string_view method,
                                 std::uint64_t run) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < 8; ++i) {
        h ^= (master >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    h = fnv1a64(dataset, h);
    h = fnv1a64("|", h);
    h = fnv1a64(defender, h);
    h = fnv1a64("|", h);
    h = fnv1a64(method, h);
    h = fnv1a64("|", h);
    for (int i = 0; i < 8; ++i) {
        h ^= (run >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return splitmix64(h);
}

} // namespace evasion
