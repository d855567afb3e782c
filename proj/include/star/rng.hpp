#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace star {

// Seedable generator whose output is identical on every platform.
//
// The engine is std::mt19937_64 (its sequence is fixed by the standard); the
// standard distributions are not, so sampling is done here by hand. Named
// sub-streams are derived with split(): the child seed is
// splitmix64(seed ^ fnv1a64(name)), so adding a new stream never perturbs the
// existing ones.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [lo, hi].
  int uniform_int(int lo, int hi);
  // Uniform in [0, 1) with 53 random bits.
  double uniform01();
  bool chance(double p) { return uniform01() < p; }

  Rng split(std::string_view name) const;

  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  template <class T>
  const T& pick(std::span<const T> items) {
    return items[below(items.size())];
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

}  // namespace star
