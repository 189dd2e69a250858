#pragma once

#include <cstdint>
#include <stdexcept>

namespace ana {

/// SplitMix64 stream.
///
/// Both execution backends consume draws from this generator in one
/// canonical order (agent-major, dimension-minor), which is what makes
/// their trajectories comparable bit for bit. The stream counts its draws
/// so tests can audit the per-iteration budget.
///
/// Single-owner mutable state: never share one stream between concurrent
/// tasks; give each run its own.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    /// Advance one step and return the finalized 64-bit output.
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        ++draws_;
        return z ^ (z >> 31);
    }

    /// Uniform double on [lo, hi); consumes exactly one next().
    double uniform(double lo, double hi) {
        if (!(lo < hi))
            throw std::invalid_argument("uniform: lo must be strictly below hi");
        return uniform_from_bits(next(), lo, hi);
    }

    /// The 53-bit mantissa mapping behind uniform(), split out so the
    /// interval edges are testable without consuming stream state.
    static double uniform_from_bits(std::uint64_t bits, double lo, double hi) {
        const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    std::uint64_t draws() const { return draws_; }

private:
    std::uint64_t state_ = 0;
    std::uint64_t draws_ = 0;
};

}  // namespace ana
