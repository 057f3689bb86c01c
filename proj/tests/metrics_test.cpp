#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ssse/builders.hpp"
#include "ssse/errors.hpp"
#include "ssse/metrics.hpp"
#include "test_util.hpp"

namespace ssse {
namespace {

SparseProjection identity_like(std::size_t n) {
  std::vector<std::uint32_t> target(n);
  std::iota(target.begin(), target.end(), 0U);
  return SparseProjection(n, target, std::vector<std::int8_t>(n, 1));
}

TEST(RowNnzCounts, WorkedExample) {
  const auto stats = row_nnz_counts(build_s_sse({Method::SSse, 78, 20, 3.0, 7}));
  EXPECT_EQ(stats.r, 3U);
  EXPECT_EQ(stats.q, 18U);
  EXPECT_DOUBLE_EQ(stats.theo_mean, 3.9);
  EXPECT_NEAR(stats.theo_var_ssse, 0.09, 1e-12);
  EXPECT_NEAR(stats.theo_var_se, 3.705, 1e-12);
  EXPECT_NEAR(stats.empirical_mean, 3.9, 1e-12);
  EXPECT_NEAR(stats.empirical_var, 0.09, 1e-12);
}

TEST(RowNnzCounts, HandCountedMatrix) {
  const SparseProjection r(3, {0, 0, 0, 2}, {1, -1, 1, 1});
  const auto stats = row_nnz_counts(r);
  EXPECT_EQ(stats.counts, (std::vector<std::size_t>{3, 0, 1}));
  // counts 3, 0, 1: mean 4/3, population variance (25/9 + 16/9 + 1/9) / 3
  EXPECT_NEAR(stats.empirical_mean, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(stats.empirical_var, 42.0 / 27.0, 1e-14);
}

TEST(RowNnzCounts, SSseVarianceIsAlwaysTheClosedForm) {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 300)(gen);
    const std::size_t d = std::uniform_int_distribution<std::size_t>(1, n)(gen);
    const auto s = row_nnz_counts(build_s_sse({Method::SSse, n, d, 3.0, gen()}));
    EXPECT_NEAR(s.empirical_var, s.theo_var_ssse, 1e-9);
    EXPECT_LE(s.theo_var_ssse, 0.25 + 1e-15);
  }
}

TEST(RowNnzCounts, SeVarianceMatchesIndependentSimulation) {
  // Oracle: throw 78 balls into 20 bins with the standard library and average
  // the population variance of bin counts.
  constexpr int kBuilds = 20000;
  std::mt19937_64 gen(17);
  std::uniform_int_distribution<int> bin(0, 19);
  double oracle = 0.0, library = 0.0;
  for (int b = 0; b < kBuilds; ++b) {
    std::vector<double> counts(20, 0.0);
    for (int j = 0; j < 78; ++j) counts[bin(gen)] += 1.0;
    double mean = 3.9, var = 0.0;
    for (double c : counts) var += (c - mean) * (c - mean);
    oracle += var / 20.0;
    library += row_nnz_counts(build_se({Method::Se, 78, 20, 3.0, static_cast<std::uint64_t>(b)}))
                   .empirical_var;
  }
  EXPECT_NEAR(library / kBuilds, oracle / kBuilds, 0.03 * oracle / kBuilds);
}

TEST(RelativeError, IsometryGivesZero) {
  const auto x = testing::random_matrix(1, 12, 3);
  EXPECT_NEAR(relative_error(x.row(0), identity_like(12)), 0.0, 1e-15);
}

TEST(RelativeError, FullCancellationGivesOne) {
  const SparseProjection r(1, {0, 0}, {1, -1});
  const std::vector<double> x{2.5, 2.5};
  EXPECT_DOUBLE_EQ(relative_error(x, r), 1.0);
}

TEST(RelativeError, CollisionDoublesNorm) {
  // Both coordinates land on one row with equal sign: ‖Rx‖ = 2, ‖x‖ = sqrt 2.
  const SparseProjection r(1, {0, 0}, {1, 1});
  const std::vector<double> x{1.0, 1.0};
  EXPECT_NEAR(relative_error(x, r), std::sqrt(2.0) - 1.0, 1e-15);
}

TEST(RelativeError, ZeroVectorRejected) {
  const std::vector<double> x(4, 0.0);
  EXPECT_THROW(relative_error(x, identity_like(4)), InvalidArgument);
}

TEST(RelativeError, InvariantToScalingAndSignOfX) {
  const auto xm = testing::random_matrix(1, 40, 8);
  const Projection r = build({Method::Se, 40, 10, 3.0, 4});
  std::vector<double> x(xm.row(0).begin(), xm.row(0).end());
  const double base = relative_error(x, r);
  for (double c : {-1.0, 2.0, 1e-3, -7.5}) {
    std::vector<double> y(x);
    for (auto& v : y) v *= c;
    EXPECT_NEAR(relative_error(y, r), base, 1e-12);
  }
}

TEST(RelativeError, DenseAndSparseAgree) {
  const auto x = testing::random_matrix(1, 30, 1);
  const auto r = build_s_sse({Method::SSse, 30, 7, 3.0, 2});
  EXPECT_DOUBLE_EQ(relative_error(x.row(0), r), relative_error(x.row(0), to_dense(r)));
}

TEST(Preservation, PermutationAlwaysPreserves) {
  const auto data = testing::random_matrix(20, 16, 5);
  const auto est = estimate_preservation_probability(data, {Method::SSse, 16, 16, 3.0, 9}, 1e-9, 200);
  EXPECT_EQ(est.p_hat, 1.0);
  EXPECT_NEAR(est.mean_rel_error, 0.0, 1e-12);
  EXPECT_EQ(est.trials, 200U);
}

TEST(Preservation, ProbabilityGrowsWithTolerance) {
  const auto data = testing::random_matrix(50, 100, 6, 0.0, 1.0);
  const std::vector<double> eps{0.02, 0.05, 0.1, 0.2, 0.5};
  const auto curve = estimate_preservation_curve(data, {Method::Se, 100, 20, 3.0, 3}, eps, 2000);
  ASSERT_EQ(curve.size(), eps.size());
  for (std::size_t i = 1; i < curve.size(); ++i) EXPECT_GE(curve[i].p_hat, curve[i - 1].p_hat);
  for (std::size_t i = 0; i < curve.size(); ++i) EXPECT_EQ(curve[i].epsilon, eps[i]);
}

TEST(Preservation, CurveMatchesSingleEstimates) {
  const auto data = testing::random_matrix(10, 60, 2);
  const BuilderSpec s{Method::SSse, 60, 12, 3.0, 21};
  const std::vector<double> eps{0.1, 0.3};
  const auto curve = estimate_preservation_curve(data, s, eps, 500);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    EXPECT_EQ(curve[i].p_hat, estimate_preservation_probability(data, s, eps[i], 500).p_hat);
  }
}

TEST(Preservation, ErrorsShrinkWithTargetDimension) {
  const auto data = testing::random_matrix(100, 200, 11, 0.0, 1.0);
  double previous = 1e9;
  for (std::size_t d : {10U, 40U, 160U}) {
    const auto errs = sample_relative_errors(data, {Method::SSse, 200, d, 3.0, 1}, 3000);
    const double mean = std::accumulate(errs.begin(), errs.end(), 0.0) / errs.size();
    EXPECT_LT(mean, previous) << d;
    previous = mean;
  }
}

TEST(Preservation, RejectsBadInput) {
  const DenseMatrix empty(0, 5);
  EXPECT_THROW(sample_relative_errors(empty, {Method::SSse, 5, 2, 3.0, 1}, 10), InvalidArgument);
  const auto data = testing::random_matrix(3, 5, 1);
  EXPECT_THROW(sample_relative_errors(data, {Method::SSse, 6, 2, 3.0, 1}, 10), ShapeError);
}

TEST(Separability, HandComputedTwoClassExample) {
  // Class 0 at {0, 2}, class 1 at {10, 12} (1-D). Means 1 and 11, grand mean 6.
  // between = 0.5*25 + 0.5*25 = 25; within = (1+1+1+1)/4 = 1.
  const DenseMatrix x(4, 1, {0.0, 2.0, 10.0, 12.0});
  const std::vector<int> labels{0, 0, 1, 1};
  EXPECT_NEAR(separability_j(x, labels), 25.0, 1e-12);
}

TEST(Separability, CoincidentMeansGiveZero) {
  const DenseMatrix x(4, 2, {1, 0, -1, 0, 1, 0, -1, 0});
  const std::vector<int> labels{0, 0, 1, 1};
  EXPECT_NEAR(separability_j(x, labels), 0.0, 1e-15);
}

TEST(Separability, ZeroWithinScatterIsDegenerate) {
  const DenseMatrix x(4, 1, {1, 1, 3, 3});
  const std::vector<int> labels{0, 0, 1, 1};
  EXPECT_THROW(separability_j(x, labels), DegenerateError);
}

TEST(Separability, NeedsTwoClasses) {
  const DenseMatrix x(3, 1, {1, 2, 3});
  const std::vector<int> labels{0, 0, 0};
  EXPECT_THROW(separability_j(x, labels), InvalidArgument);
}

TEST(Separability, InvariantUnderTranslationAndScaling) {
  const auto x = testing::random_matrix(60, 5, 3);
  std::vector<int> labels(60);
  for (std::size_t i = 0; i < 60; ++i) labels[i] = static_cast<int>(i % 3);
  const double base = separability_j(x, labels);
  auto values = std::vector<double>(x.values().begin(), x.values().end());
  for (auto& v : values) v = 3.0 * v + 17.0;
  EXPECT_NEAR(separability_j(DenseMatrix(60, 5, values), labels), base, 1e-9 * base);
}

TEST(Separability, MatchesScatterMatrixOracle) {
  // Oracle builds the full S_b and S_w matrices and takes their traces.
  const std::size_t m = 30, n = 4;
  const auto x = testing::random_matrix(m, n, 12);
  std::vector<int> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = i < 8 ? 0 : (i < 20 ? 1 : 2);
  std::vector<std::vector<double>> mean(3, std::vector<double>(n, 0.0));
  std::vector<double> grand(n, 0.0), count(3, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    count[labels[i]] += 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      mean[labels[i]][j] += x(i, j);
      grand[j] += x(i, j) / m;
    }
  }
  for (int c = 0; c < 3; ++c)
    for (auto& v : mean[c]) v /= count[c];
  std::vector<std::vector<double>> sb(n, std::vector<double>(n, 0.0)), sw = sb;
  for (int c = 0; c < 3; ++c)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        sb[a][b] += count[c] / m * (mean[c][a] - grand[a]) * (mean[c][b] - grand[b]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const int c = labels[i];
        sw[a][b] += (count[c] / m) / count[c] * (x(i, a) - mean[c][a]) * (x(i, b) - mean[c][b]);
      }
  double tb = 0.0, tw = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    tb += sb[a][a];
    tw += sw[a][a];
  }
  EXPECT_NEAR(separability_j(x, labels), tb / tw, 1e-12 * tb / tw);
}

TEST(ClusteringAccuracy, Examples) {
  const std::vector<int> truth{0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(clustering_accuracy(std::vector<int>{1, 1, 0, 0}, truth), 1.0);
  EXPECT_DOUBLE_EQ(clustering_accuracy(std::vector<int>{0, 1, 0, 1}, truth), 0.5);
  EXPECT_DOUBLE_EQ(clustering_accuracy(std::vector<int>{7, 7, 7, 7}, truth), 0.5);
  EXPECT_DOUBLE_EQ(clustering_accuracy(std::vector<int>{5, -3, 9, 9}, std::vector<int>{2, 2, 8, 8}),
                   0.75);
}

TEST(ClusteringAccuracy, Errors) {
  EXPECT_THROW(clustering_accuracy(std::vector<int>{0}, std::vector<int>{0, 1}), InvalidArgument);
  EXPECT_THROW(clustering_accuracy(std::vector<int>{}, std::vector<int>{}), InvalidArgument);
}

TEST(ClusteringAccuracy, MatchesBruteForceOverPermutations) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = std::uniform_int_distribution<int>(1, 5)(gen);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 60)(gen);
    std::uniform_int_distribution<int> lab(0, k - 1);
    std::vector<int> pred(m), truth(m);
    for (std::size_t i = 0; i < m; ++i) {
      pred[i] = lab(gen);
      truth[i] = lab(gen);
    }
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = 0;
    do {
      std::size_t hits = 0;
      for (std::size_t i = 0; i < m; ++i) hits += perm[pred[i]] == truth[i] ? 1 : 0;
      best = std::max(best, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_NEAR(clustering_accuracy(pred, truth), static_cast<double>(best) / m, 1e-15);
  }
}

TEST(MaxWeightAssignment, SmallMatrix) {
  const std::vector<std::vector<long long>> w{{1, 9, 1}, {9, 1, 1}, {1, 1, 9}};
  EXPECT_EQ(max_weight_assignment(w), (std::vector<std::size_t>{1, 0, 2}));
}

}  // namespace
}  // namespace ssse
