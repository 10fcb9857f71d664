#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace sstpca {

/// Labelled sub-streams derived from one master seed.
enum class Stream : std::uint64_t {
  noise = 1,
  supports = 2,
  signs = 3,
  magnitudes = 4,
  split = 5,
  prior = 6,
  composition = 7,
  trial = 8,
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of a labelled sub-stream: mix64(master ^ mix64(label)).
///
/// Every sampler consumes a fresh engine seeded this way, so any component
/// (noise, supports, signs, ...) can be regenerated without replaying the others.
std::uint64_t derive_seed(std::uint64_t master, Stream stream) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Seeded random source with portable output.
///
/// Bits come from std::mt19937_64, whose sequence is fixed by the standard.
/// All derived variates are computed here rather than through the
/// implementation-defined <random> distributions, so streams are identical
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// +1 or -1 with equal probability.
  int sign() { return (next_u64() >> 63) != 0 ? -1 : 1; }
  /// Standard normal via Box-Muller; pairs are cached.
  double normal();
  /// m distinct values of [0, n) in draw order (partial Fisher-Yates).
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t n, std::uint32_t m);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sstpca
