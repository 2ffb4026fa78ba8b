#pragma once

#include <cstdint>

namespace surp {

/// 64-bit linear congruential generator (Knuth's MMIX constants):
///
///   state' = state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
///
/// The seed is the initial state. Only the top 53 bits feed uniform(), so
/// the weak low-order bits of the LCG never reach callers. Every synthetic
/// artifact in the project is produced from this generator so outputs are
/// reproducible byte for byte across platforms.
class Lcg64 {
public:
    explicit constexpr Lcg64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    /// Uniform double in [0, 1).
    constexpr double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n); n must be > 0.
    constexpr std::uint64_t below(std::uint64_t n) noexcept {
        auto r = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
        return r < n ? r : n - 1;
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a base seed and a stream index
/// (splitmix64 finalizer).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace surp
