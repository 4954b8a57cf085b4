#pragma once

#include <cmath>
#include <cstdint>

#include "tsne/errors.hpp"

namespace tsne {

// PCG32 (O'Neill's pcg_setseq_64_xsh_rr_32). The standard library's
// distributions are implementation-defined, so seeded runs would not be
// reproducible across toolchains; this generator plus the samplers below is
// fixed for good.
class Pcg32 {
  public:
    explicit Pcg32(std::uint64_t seed = 0, std::uint64_t stream = 0)
        : state_(0), inc_((stream << 1u) | 1u) {
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    // Uniform in [0, 1) with the full 53 bits of a double.
    double next_double() {
        std::uint64_t hi = next_u32();
        std::uint64_t lo = next_u32();
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - next_double(); // (0, 1], keeps the log finite
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    // Unbiased integer in [0, bound) by rejection.
    std::uint32_t next_below(std::uint32_t bound) {
        if (bound == 0) throw NumericError("next_below: bound must be positive");
        std::uint32_t threshold = (0u - bound) % bound;
        for (;;) {
            std::uint32_t r = next_u32();
            if (r >= threshold) return r % bound;
        }
    }

  private:
    std::uint64_t state_, inc_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace tsne
