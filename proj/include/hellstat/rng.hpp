#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace hellstat {

namespace detail {

// SplitMix64, used both for seeding and for deriving independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Seedable, splittable 64-bit generator (xoshiro256**). All stochastic
/// operations in the library take an explicit Rng; independent workers get
/// independent streams via split().
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = detail::splitmix64(sm);
    }

    std::uint64_t seed() const { return seed_; }

    /// Independent stream derived from (seed, stream index).
    Rng split(std::uint64_t stream) const {
        std::uint64_t sm = seed_;
        std::uint64_t h = detail::splitmix64(sm);
        sm = h ^ (stream * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
        return Rng(detail::splitmix64(sm));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on (0, 1); never returns 0 exactly.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on [0, bound).
    std::uint64_t uniform_int(std::uint64_t bound) {
        // Lemire rejection-free-ish: widening multiply with retry on the
        // short range to keep the distribution exact.
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t t = -bound % bound;
            while (lo < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Standard normal via Box-Muller (no cached spare, so split streams
    /// stay reproducible).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Complex Gaussian with E[|g|^2] = 1 (real and imaginary parts each
    /// N(0, 1/2)); one Box-Muller pair per draw.
    std::complex<double> complex_normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        const double phi = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
    std::uint64_t seed_;
};

}  // namespace hellstat
