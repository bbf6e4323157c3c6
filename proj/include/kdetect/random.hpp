#pragma once

#include <cstdint>

namespace kdetect {

// SplitMix64 (Steele, Lea & Flood 2014). The whole stream is a function of
// the seed, so any language can reproduce synthetic corpora and splits
// bit for bit. Algorithm identifier: "splitmix64".
class SplitMix64 {
 public:
  static constexpr const char* kAlgorithm = "splitmix64";

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); plain modulo reduction. n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace kdetect
