#pragma once

#include <cstdint>
#include <random>

namespace srbench {

// Deterministic generator for augmentation streams.
//
// Only the engine comes from <random>; std distributions are
// implementation-defined, so sampling is done here to keep streams
// identical across standard libraries and platforms. Not thread safe: use
// one generator per worker, seeded with derive_seed(base, worker).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] (inclusive), unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  bool coin() { return (next_u64() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

Rng make_rng(std::uint64_t seed);

// SplitMix64 mix of (base, index); used for per-worker and per-sample seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace srbench
