#pragma once

#include <cstdint>

namespace eqhodge {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then the xor-shift-multiply
/// finalizer below.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

  /// Uniform integer in [0, n); n > 0. Modulo bias is irrelevant at our sizes.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

/// Seed for trial `index` of a stream identified by `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  SplitMix64 g(base ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  return g.next();
}

}  // namespace eqhodge
