#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace illiqnet {

/// Deterministic PRNG used everywhere randomness is needed. splitmix64 core,
/// hand-rolled bounded draws and Box-Muller normals so that streams are
/// reproducible across standard libraries and platforms (std::shuffle and
/// std::normal_distribution are implementation-defined).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n >= 1. Rejection-free multiply-shift map;
    /// bias is < 2^-64 * n, irrelevant at our scales.
    uint64_t next_below(uint64_t n) {
        return uint64_t((__uint128_t(next_u64()) * n) >> 64);
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Standard normal via Box-Muller on explicit uniforms.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Fisher-Yates; deterministic for a given seed.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = size_t(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Stream derivation: hash a master seed with stream coordinates (stock index,
/// day index, purpose tag) so parallel generation stays deterministic.
inline uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    auto mix = [](uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    uint64_t h = seed;
    h = mix(h ^ (a + 0x9e3779b97f4a7c15ULL));
    h = mix(h ^ (b + 0x7f4a7c15f39cc060ULL));
    h = mix(h ^ (c + 0x1bf58476d1ce4e5bULL));
    return h;
}

}  // namespace illiqnet
