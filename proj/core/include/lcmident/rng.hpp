#pragma once

#include <cstdint>
#include <random>

namespace lcmident {

/// splitmix64-style mixing for deriving independent deterministic substreams
/// (per-trial points, retry attempts) from one user-facing seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Integer samples for "evaluate at a random point", uniform in [1, 10^6].
/// mt19937_64 is bit-for-bit reproducible across platforms.
class PointSampler {
  public:
    explicit PointSampler(std::uint64_t seed) : rng_(seed) {}

    long next() { return static_cast<long>(rng_() % 1000000ULL) + 1; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace lcmident
