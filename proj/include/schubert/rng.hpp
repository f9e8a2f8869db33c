#pragma once

#include <cstdint>
#include <limits>

namespace schubert {

// Counter-based SplitMix64. A stream is keyed by seed XOR stream index, so
// chain k of a run with seed s draws from key mix(s ^ k).
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : key_(mix(seed ^ stream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform on [0, bound), bound >= 1, without modulo bias.
  std::uint64_t below(std::uint64_t bound);

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t counter() const { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace schubert
