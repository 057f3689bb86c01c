#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace ssse {

// Reproducibility contract
// ------------------------
// All randomness comes from std::mt19937_64, whose output sequence is fixed
// by the C++ standard for a given 64-bit seed. The standard <random>
// distributions are NOT portable, so bounded integers, uniform reals, normals
// and coin flips are derived here from raw 64-bit words:
//
//   below(b)    Lemire's multiply-shift with rejection (unbiased)
//   uniform01() top 53 bits / 2^53, in [0, 1)
//   normal()    Marsaglia polar method, second variate cached
//   coin()      one bit per call, consumed LSB first from a 64-bit word
//
// Seeds for sub-streams and trials are derived with derive_seed(), a
// splitmix64-style mixer, so that stream i of seed s is independent of how
// many other streams or trials are drawn.

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// H(parent, index): seed of child stream `index` under `parent`.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ mix64(index ^ 0xd1b54a32d192ed03ULL));
}

/// 64-bit FNV-1a, used to turn experiment cell labels into stream indices.
constexpr std::uint64_t hash_label(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform real in [0, 1).
  double uniform01();

  /// Standard normal variate.
  double normal();

  /// Fair coin: true with probability 1/2.
  bool coin();

  /// +1 or -1 with equal probability.
  int sign() { return coin() ? 1 : -1; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Unbiased Fisher-Yates shuffle (Durstenfeld, from the back).
template <class T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(values[i - 1], values[j]);
  }
}

}  // namespace ssse
