#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "ssse/rng.hpp"

namespace ssse {
namespace {

// Chi-squared statistic against a uniform expectation.
template <class Counts>
double chi_squared(const Counts& counts, double expected) {
  double chi = 0.0;
  for (auto c : counts) chi += (c - expected) * (c - expected) / expected;
  return chi;
}

TEST(Rng, EngineIsStandardMt19937_64) {
  // The standard fixes the 10000th output of a default-seeded engine.
  std::mt19937_64 reference;
  reference.discard(9999);
  EXPECT_EQ(reference(), 9981545732273789042ULL);

  Rng rng(std::mt19937_64::default_seed);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next();
  EXPECT_EQ(v, 9981545732273789042ULL);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(17), b(17), c(18);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, BelowIsUniform) {
  Rng rng(1);
  constexpr std::uint64_t kBound = 7;
  constexpr int kDraws = 70000;
  std::array<int, kBound> counts{};
  for (int i = 0; i < kDraws; ++i) {
    const auto v = rng.below(kBound);
    ASSERT_LT(v, kBound);
    ++counts[v];
  }
  // df = 6, critical value at p = 0.001.
  EXPECT_LT(chi_squared(counts, kDraws / 7.0), 22.46);
}

TEST(Rng, BelowOneIsZero) {
  Rng rng(2);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(rng.below(1), 0U);
}

TEST(Rng, Uniform01Moments) {
  Rng rng(3);
  double sum = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / kDraws, 0.5, 0.005);
}

TEST(Rng, NormalMoments) {
  Rng rng(4);
  double sum = 0.0, sq = 0.0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  const double mean = sum / kDraws;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sq / kDraws - mean * mean, 1.0, 0.015);
}

TEST(Rng, CoinIsFair) {
  Rng rng(5);
  int heads = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) heads += rng.coin() ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(heads) / kDraws, 0.5, 0.006);
}

TEST(Shuffle, AllPermutationsEquallyLikely) {
  Rng rng(6);
  std::map<std::array<int, 3>, int> counts;
  constexpr int kDraws = 60000;
  for (int i = 0; i < kDraws; ++i) {
    std::array<int, 3> v = {0, 1, 2};
    shuffle(std::span<int>(v), rng);
    ++counts[v];
  }
  ASSERT_EQ(counts.size(), 6U);
  std::vector<int> c;
  for (const auto& [perm, n] : counts) c.push_back(n);
  // df = 5, critical value at p = 0.001.
  EXPECT_LT(chi_squared(c, kDraws / 6.0), 20.52);
}

TEST(DeriveSeed, ChildrenAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t parent : {0ULL, 1ULL, 42ULL}) {
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(parent, i));
  }
  EXPECT_EQ(seen.size(), 3000U);
  EXPECT_EQ(derive_seed(9, 3), derive_seed(9, 3));
}

TEST(HashLabel, Fnv1aReferenceValues) {
  EXPECT_EQ(hash_label(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(hash_label("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace ssse
