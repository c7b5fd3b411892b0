#pragma once

#include <cstdint>

namespace lazydec {

/// SplitMix64 (Steele, Lea and Flood). A counter-based 64-bit generator: output j is a bijective
/// mix of state0 + (j + 1) * gamma. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(std::uint64_t state = 0) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return mix(state_ += kGamma); }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Stream for one Monte Carlo trial: trial i owns positions [i * 2^32, (i + 1) * 2^32) of the
/// sequence keyed by the master seed, so distinct trials never share outputs as long as each
/// trial draws fewer than 2^32 values.
inline SplitMix64 trial_stream(std::uint64_t master_seed, std::uint64_t trial_index) {
  const std::uint64_t key = SplitMix64::mix(master_seed ^ 0x6a09e667f3bcc909ULL);
  return SplitMix64(key + (trial_index << 32) * SplitMix64::kGamma);
}

}  // namespace lazydec
