#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ssse/matrix.hpp"

namespace ssse {

struct KMeansConfig {
  std::size_t k = 2;
  std::size_t replicates = 20;
  std::size_t max_iters = 100;
  double tol = 1e-6;  ///< stop when (prev - cost) <= tol * prev
  std::uint64_t seed = 0;
};

struct KMeansResult {
  std::vector<int> assignments;
  DenseMatrix centroids;  ///< k x dim
  double cost = 0.0;      ///< sum of squared distances to assigned centroids
  std::size_t iterations_run = 0;
  std::size_t replicate_chosen = 0;
  bool empty_clusters = false;  ///< some cluster ended with no points
  /// Cost after each Lloyd iteration of the chosen replicate.
  std::vector<double> cost_history;
  /// Final cost of every replicate, in replicate order.
  std::vector<double> replicate_costs;
};

/// Lloyd's algorithm from `replicates` seeded k-means++ starts; returns the
/// lowest-cost replicate (ties go to the earliest). Replicate r is seeded
/// with derive_seed(cfg.seed, r). Ties in nearest-centroid assignment go to
/// the lowest centroid index. A centroid that loses all its points is moved
/// onto the point farthest from its own centroid.
KMeansResult kmeans(const DenseMatrix& data, const KMeansConfig& cfg);

}  // namespace ssse
