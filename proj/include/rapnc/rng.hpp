#pragma once

#include <cstdint>
#include <random>

namespace rapnc {

// Deterministic, portable random source. mt19937_64 has a fully specified
// output sequence, and the uniform mappings below avoid the
// implementation-defined std::uniform_*_distribution algorithms, so a given
// (seed, stream) pair produces identical values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // Uniform integer in [lo, hi] via rejection-free modulo on a 64-bit draw;
  // the bias is negligible for the small ranges used here.
  long long uniform_int(long long lo, long long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(engine_() % span);
  }

 private:
  // splitmix64-style finalizer to derive independent streams from one seed.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace rapnc
