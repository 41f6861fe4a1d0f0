#ifndef TORP_RNG_HPP
#define TORP_RNG_HPP

//
// Deterministic, platform-independent random source.
//
// Engine: splitmix64 (Steele, Lea, Flood; public domain), a splittable
// 64-bit generator. Gaussians come from a Box-Muller transform on 53-bit
// uniforms. Given the same seed the byte stream is identical on every
// platform, which the instance generator and the trace-determinism tests
// rely on.
//

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "torp/types.hpp"

namespace torp {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Split off an independent stream; `tag` distinguishes sibling streams.
    SplitMix64 split(std::uint64_t tag) {
        return SplitMix64(next_u64() ^ (0x9e3779b97f4a7c15ull * (tag + 1)));
    }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; caches the second deviate.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle  = 2.0 * std::numbers::pi * u2;
        cached_      = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

    // Uniform integer in [0, bound) by rejection (bound > 0).
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~0ull - (~0ull % bound);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % bound;
    }

    DenseMatrix gaussian_matrix(Index rows, Index cols) {
        DenseMatrix m(rows, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i)
                m(i, j) = next_gaussian();
        return m;
    }

    Vector gaussian_vector(Index n) {
        Vector v(n);
        for (Index i = 0; i < n; ++i) v(i) = next_gaussian();
        return v;
    }

    // k distinct values from [0, n), sorted; partial Fisher-Yates.
    std::vector<Index> sample_without_replacement(Index n, Index k) {
        std::vector<Index> pool(static_cast<std::size_t>(n));
        for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        for (Index i = 0; i < k; ++i) {
            const Index j = i + static_cast<Index>(next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
        }
        pool.resize(static_cast<std::size_t>(k));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::uint64_t state_;
    double cached_      = 0.0;
    bool have_cached_   = false;
};

}  // namespace torp

#endif  // TORP_RNG_HPP
