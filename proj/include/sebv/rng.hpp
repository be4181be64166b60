#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sebv {

/// Seeded generator with a frozen algorithm: std::mt19937_64 seeded with the
/// 64-bit seed, uniform doubles built from the top 53 bits of each draw.
/// Both pieces are fully specified by the C++ standard, so sequences are
/// identical across platforms and standard libraries.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64-u53";

  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform integer in [0, bound). `bound` must be nonzero.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Deterministic child seed for stream `index` of `seed` (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace sebv
