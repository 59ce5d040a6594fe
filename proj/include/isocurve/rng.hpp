#pragma once

#include <cstdint>

namespace isocurve {

/// Knuth's MMIX linear congruential generator. Used instead of <random>
/// engines/distributions so sampled values are bit-identical across
/// platforms and standard library versions.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t nextU64() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double nextDouble() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * nextDouble(); }

    std::uint32_t nextBelow(std::uint32_t n) {
        return static_cast<std::uint32_t>(nextU64() % n);
    }

private:
    std::uint64_t state_;
};

} // namespace isocurve
