#pragma once

#include <cmath>
#include <cstdint>

namespace castkit {

/// Counter-based random generator with key-derived substreams.
///
/// Every run owns one root stream; per-iteration and per-particle substreams
/// are derived with sub(), so the draw order inside one substream never
/// depends on how work is scheduled elsewhere. All distributions are built
/// from the raw 64-bit output (no std::*_distribution), which keeps byte
/// streams identical across standard libraries and compilers.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : state_(mix(seed ^ kSalt)) {}

    /// Derive an independent substream for the given key.
    SplitRng sub(std::uint64_t key) const {
        SplitRng child(0);
        child.state_ = mix(state_ ^ mix(key * 0x9e3779b97f4a7c15ULL + kSalt));
        return child;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal01() {
        double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    /// Uniform integer in [0, n), n > 0.
    int uniform_int(int n) {
        return static_cast<int>((static_cast<unsigned __int128>(next_u64()) *
                                 static_cast<unsigned __int128>(n)) >> 64);
    }

private:
    static constexpr std::uint64_t kSalt = 0x51afd7ed558ccd25ULL;
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    // SplitMix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace castkit
