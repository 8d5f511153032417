#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace nqcc {

/// Seedable, splittable random source. Every stochastic operation in the
/// library receives one of these explicitly; identical seeds give identical
/// draw sequences on every platform (the raw mt19937_64 stream is mandated by
/// the standard, and all derived draws below avoid std::*_distribution, whose
/// output is implementation-defined).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    /// Child stream derived from this source's seed and a label. Splitting
    /// does not disturb the parent's sequence.
    RandomSource split(std::string_view label) const {
        std::uint64_t h = 1469598103934665603ULL; // FNV-1a
        for (unsigned char c : label) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return RandomSource(splitmix64(seed_ ^ h));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Fair coin.
    bool coin() { return (engine_() >> 63) != 0; }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Rejection from the top bits keeps the draw unbiased and portable.
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v = engine_();
        while (v >= limit) {
            v = engine_();
        }
        return v % n;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace nqcc
