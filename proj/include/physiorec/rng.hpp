#pragma once

#include <cmath>
#include <cstdint>

namespace physiorec {

// SplitMix64 generator. Hand-rolled instead of <random> so that streams are
// bit-identical across standard libraries and platforms; simulation and
// training reproducibility depend on that.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(scramble(scramble(seed) ^ (stream * 0x9e3779b97f4a7c15ULL + 1))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return scramble_output(state_);
    }

    // Uniform double in [0, 1), 53 bits of precision.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Standard normal via Box-Muller; consumes exactly two uniforms per call.
    double next_normal() {
        double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Uniform integer in [0, n). Modulo bias is negligible for the n used here.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    static std::uint64_t scramble_output(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t scramble(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        return scramble_output(z);
    }

    std::uint64_t state_;
};

}  // namespace physiorec
