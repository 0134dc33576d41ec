#pragma once

#include <cstdint>
#include <limits>

namespace mla {

/// SplitMix64 run in counter mode: output i of stream s under seed k is
/// mix(key(k, s) + (i + 1) * golden). Any replicate's draws can be produced
/// without touching the others.
class CounterRng {
public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ 0x6a09e667f3bcc909ULL) ^ mix(stream + 0xbb67ae8584caa73bULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform on {0..range-1} by fixed-point multiply; range must be positive.
  std::uint64_t below(std::uint64_t range) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * range) >> 64);
  }

  /// Uniform on [0,1) with 53 random bits.
  double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace mla
