#pragma once

// Counter-based SplitMix64. Block c of the stream keyed by `key` is
// mix(key + (c + 1) * 0x9E3779B97F4A7C15), i.e. exactly the c-th output of
// the sequential SplitMix64 generator seeded with `key`. Any block can be
// computed independently, so sample i of an experiment never depends on
// which worker produced samples 0..i-1.

#include <cstdint>

namespace dgs {

constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64Stream {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64Stream(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t at(std::uint64_t block) const noexcept {
    return splitmix64_mix(key_ + (block + 1) * kSplitMixGamma);
  }

  // UniformRandomBitGenerator interface (sequential reads).
  constexpr std::uint64_t operator()() noexcept { return at(counter_++); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Key for sample `index` of a run at order n with master seed `seed`.
constexpr std::uint64_t derive_sample_seed(std::uint64_t seed, std::uint64_t n,
                                           std::uint64_t index) noexcept {
  return splitmix64_mix(splitmix64_mix(splitmix64_mix(seed) ^ n) + index * kSplitMixGamma);
}

}  // namespace dgs
