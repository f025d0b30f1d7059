#pragma once

// Deterministic, platform-independent pseudo-random stream (splitmix64).
// Standard-library distributions are implementation-defined, which would
// break the byte-identical-rerun contract, so sampling is done from raw
// 64-bit outputs only.

#include <cstdint>

namespace cyclolab {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi].
    long next_int(long lo, long hi) {
        return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Independent child stream; used for per-task seed derivation so that
    // parallel and serial runs produce identical output.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ (0x517cc1b727220a95ULL * (index + 1)));
        r.next_u64();
        return r.next_u64();
    }

  private:
    std::uint64_t state_;
};

}  // namespace cyclolab
