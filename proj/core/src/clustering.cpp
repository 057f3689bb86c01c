#include "ssse/clustering.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "ssse/errors.hpp"
#include "ssse/rng.hpp"

namespace ssse {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    s += diff * diff;
  }
  return s;
}

DenseMatrix kmeanspp_init(const DenseMatrix& data, std::size_t k, Rng& rng) {
  const std::size_t m = data.rows();
  DenseMatrix centroids(k, data.cols());
  std::vector<double> nearest(m, std::numeric_limits<double>::infinity());

  auto place = [&](std::size_t c, std::size_t point) {
    std::copy_n(data.row(point).begin(), data.cols(), centroids.row(c).begin());
    for (std::size_t i = 0; i < m; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(data.row(i), centroids.row(c)));
    }
  };

  place(0, static_cast<std::size_t>(rng.below(m)));
  for (std::size_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : nearest) total += v;
    std::size_t chosen = m - 1;
    if (total > 0.0) {
      const double target = rng.uniform01() * total;
      double cumulative = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        cumulative += nearest[i];
        if (cumulative > target) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = static_cast<std::size_t>(rng.below(m));
    }
    place(c, chosen);
  }
  return centroids;
}

KMeansResult lloyd(const DenseMatrix& data, const KMeansConfig& cfg, std::uint64_t seed) {
  const std::size_t m = data.rows();
  const std::size_t dim = data.cols();
  const std::size_t k = cfg.k;

  Rng rng(seed);
  KMeansResult res;
  res.centroids = kmeanspp_init(data, k, rng);
  res.assignments.assign(m, 0);

  std::vector<double> dist(m, 0.0);
  std::vector<std::size_t> members(k, 0);
  double prev_cost = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 0; iter < cfg.max_iters; ++iter) {
    for (std::size_t i = 0; i < m; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double dd = squared_distance(data.row(i), res.centroids.row(c));
        if (dd < best) {
          best = dd;
          best_c = static_cast<int>(c);
        }
      }
      res.assignments[i] = best_c;
      dist[i] = best;
    }

    // Centroid update, summing members in sample order.
    std::fill(members.begin(), members.end(), 0);
    DenseMatrix sums(k, dim);
    for (std::size_t i = 0; i < m; ++i) {
      const auto c = static_cast<std::size_t>(res.assignments[i]);
      ++members[c];
      auto s = sums.row(c);
      const auto x = data.row(i);
      for (std::size_t j = 0; j < dim; ++j) s[j] += x[j];
    }
    bool reseeded = false;
    for (std::size_t c = 0; c < k; ++c) {
      if (members[c] == 0) continue;
      auto s = sums.row(c);
      auto out = res.centroids.row(c);
      for (std::size_t j = 0; j < dim; ++j) out[j] = s[j] / static_cast<double>(members[c]);
    }

    double cost = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      dist[i] = squared_distance(data.row(i),
                                 res.centroids.row(static_cast<std::size_t>(res.assignments[i])));
      cost += dist[i];
    }

    for (std::size_t c = 0; c < k; ++c) {
      if (members[c] != 0) continue;
      const auto far = static_cast<std::size_t>(
          std::max_element(dist.begin(), dist.end()) - dist.begin());
      std::copy_n(data.row(far).begin(), dim, res.centroids.row(c).begin());
      dist[far] = 0.0;
      reseeded = true;
    }

    res.cost = cost;
    res.cost_history.push_back(cost);
    res.iterations_run = iter + 1;

    if (!reseeded && (cost == 0.0 || prev_cost - cost <= cfg.tol * prev_cost)) break;
    prev_cost = cost;
  }

  // Flag reflects the final labelling only.
  std::fill(members.begin(), members.end(), 0);
  for (int a : res.assignments) ++members[static_cast<std::size_t>(a)];
  res.empty_clusters = std::count(members.begin(), members.end(), 0U) > 0;
  return res;
}

}  // namespace

KMeansResult kmeans(const DenseMatrix& data, const KMeansConfig& cfg) {
  if (cfg.k == 0) throw InvalidArgument("kmeans: k must be positive");
  if (cfg.k > data.rows()) {
    throw InvalidArgument("kmeans: k (" + std::to_string(cfg.k) + ") exceeds sample count (" +
                          std::to_string(data.rows()) + ")");
  }
  if (cfg.replicates == 0) throw InvalidArgument("kmeans: replicates must be positive");
  if (cfg.max_iters == 0) throw InvalidArgument("kmeans: max_iters must be positive");
  if (!(cfg.tol >= 0.0)) throw InvalidArgument("kmeans: tol must be nonnegative");
  if (!data.all_finite()) throw InvalidArgument("kmeans: data contains non-finite values");

  KMeansResult best;
  std::vector<double> costs;
  costs.reserve(cfg.replicates);
  for (std::size_t r = 0; r < cfg.replicates; ++r) {
    KMeansResult run = lloyd(data, cfg, derive_seed(cfg.seed, r));
    costs.push_back(run.cost);
    if (r == 0 || run.cost < best.cost) {
      run.replicate_chosen = r;
      best = std::move(run);
    }
  }
  best.replicate_costs = std::move(costs);
  return best;
}

}  // namespace ssse
