#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>

namespace scambait {

// 64-bit FNV-1a; stable across platforms, used for ids and seed derivation.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t basis = 0xcbf29ce484222325ULL);

std::uint64_t splitmix64(std::uint64_t x);

// Derives an independent child seed from a parent seed and a label.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label);
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label, std::uint64_t index);

// Seeded generator whose draws are identical on every platform: the engine is
// std::mt19937_64 (fully specified) and the distributions are implemented
// here rather than taken from <random>, whose algorithms are unspecified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  // Exponential variate parameterised by its median.
  double exponential_with_median(double median);

  template <typename T>
  const T& pick(std::span<const T> items) {
    if (items.empty()) throw std::invalid_argument("Rng::pick on empty range");
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scambait
