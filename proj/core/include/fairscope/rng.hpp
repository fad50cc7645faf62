#pragma once

#include <cstdint>

namespace fairscope {

/// Counter-based generator: draw i is splitmix64_mix(seed + (i + 1) * 0x9E3779B97F4A7C15),
/// i.e. the i-th output of SplitMix64 seeded with `seed`. Any draw can be
/// recomputed from (seed, counter) alone, so fixtures are portable across
/// implementations.
///
/// Reference vector (seed 1234567, first five draws):
///   6457827717110365317, 3203168211198807973, 9817491932198370423,
///   4593380528125082431, 16408922859458223821
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t at(std::uint64_t counter) const { return mix(seed_ + (counter + 1) * kGolden); }
  std::uint64_t next() { return at(counter_++); }

  /// 53-bit uniform in [0, 1).
  double uniform();
  /// 53-bit uniform in (0, 1].
  double uniform_open_low();
  /// Standard normal by Box-Muller (cosine branch); consumes two draws.
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace fairscope
