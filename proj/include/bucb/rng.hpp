#pragma once

// Reproducible random streams.
//
// Every stream in the library is a xoshiro256** generator (Blackman & Vigna,
// 2018) whose 256-bit state is filled from a 64-bit seed with the SplitMix64
// sequence. Seeds for replications and sweep points are derived with a
// SplitMix64-style avalanche mixer, so a run depends only on
// (master_seed, index) and never on thread scheduling.
//
// Transforms are fixed:
//   uniform on (0,1]  : ((x >> 11) + 1) * 2^-53
//   uniform on [0,1)  : (x >> 11) * 2^-53
//   exponential       : -ln(u),  u on (0,1]
//   standard normal   : Box-Muller, r = sqrt(-2 ln u1), u1 on (0,1], u2 on [0,1);
//                       emits r*cos(2 pi u2) then r*sin(2 pi u2)

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>


namespace bucb {

/// 64-bit avalanche finalizer (SplitMix64 / Stafford variant 13). Bijective.
constexpr std::uint64_t avalanche64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Seed for child stream `index` of `seed`. Distinct indices give distinct
/// seeds for a fixed parent.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    return avalanche64(avalanche64(seed) ^ index);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
    constexpr std::uint64_t next() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return avalanche64(state_);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256**; satisfies UniformRandomBitGenerator.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256(std::uint64_t seed) noexcept {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
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

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4]{};
};

inline constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

inline double uniform_open_closed(std::uint64_t bits) noexcept {
    return static_cast<double>((bits >> 11) + 1) * kTwoPow53Inv;
}

inline double uniform_closed_open(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * kTwoPow53Inv;
}

/// Box-Muller normal sampler; caches the second variate of each pair.
class NormalSampler {
public:
    template <class Gen>
    double operator()(Gen& gen) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open_closed(gen());
        const double u2 = uniform_closed_open(gen());
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Noise source for one episode: an exponential stream for the perturbations
/// and a separate Gaussian stream for the incomes, both derived from one seed.
/// Concrete and invariant runs built from the same seed see identical draws.
class SeededStreams {
public:
    explicit SeededStreams(std::uint64_t seed) noexcept
        : perturb_(mix_seed(seed, 0)), income_(mix_seed(seed, 1)) {}

    double perturbation() noexcept { return -std::log(uniform_open_closed(perturb_())); }
    double standard_normal() noexcept { return normal_(income_); }

private:
    Xoshiro256 perturb_;
    Xoshiro256 income_;
    NormalSampler normal_;
};

/// Anything that can feed an episode: perturbations (>= 0) and standard normals.
template <class S>
concept NoiseSource = requires(S& s) {
    { s.perturbation() } -> std::convertible_to<double>;
    { s.standard_normal() } -> std::convertible_to<double>;
};

}  // namespace bucb
