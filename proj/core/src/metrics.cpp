#include "ssse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ssse/errors.hpp"
#include "ssse/rng.hpp"

namespace ssse {

namespace {

constexpr std::uint64_t kVectorStream = 2;

double relative_error_of(std::span<const double> x, const std::vector<double>& image) {
  const double x_norm = std::sqrt(squared_norm(x));
  if (x_norm == 0.0) throw InvalidArgument("relative_error: zero vector");
  return std::abs(std::sqrt(squared_norm(image)) / x_norm - 1.0);
}

}  // namespace

RowStats row_nnz_counts(const SparseProjection& r) {
  RowStats s;
  const std::size_t n = r.cols();
  const std::size_t d = r.rows();
  s.counts.assign(d, 0);
  for (auto t : r.target_row()) ++s.counts[t];

  const auto dd = static_cast<double>(d);
  const auto nn = static_cast<double>(n);
  s.empirical_mean = nn / dd;
  double ss = 0.0;
  for (auto c : s.counts) {
    const double dev = static_cast<double>(c) - s.empirical_mean;
    ss += dev * dev;
  }
  s.empirical_var = ss / dd;

  s.r = n / d;
  s.q = n % d;
  const double frac = static_cast<double>(s.q) / dd;
  s.theo_mean = nn / dd;
  s.theo_var_ssse = frac - frac * frac;
  s.theo_var_se = nn * (1.0 / dd) * (1.0 - 1.0 / dd);
  return s;
}

double relative_error(std::span<const double> x, const SparseProjection& r) {
  return relative_error_of(x, project_vector(x, r));
}

double relative_error(std::span<const double> x, const DenseProjection& r) {
  return relative_error_of(x, project_vector(x, r));
}

double relative_error(std::span<const double> x, const Projection& r) {
  return std::visit([&](const auto& p) { return relative_error(x, p); }, r);
}

std::vector<double> sample_relative_errors(const DenseMatrix& vectors, const BuilderSpec& spec,
                                           std::size_t trials) {
  if (vectors.rows() == 0) throw InvalidArgument("preservation: empty vector set");
  if (vectors.cols() != spec.n) {
    throw ShapeError("preservation: vectors have " + std::to_string(vectors.cols()) +
                     " features, spec.n is " + std::to_string(spec.n));
  }
  if (trials == 0) throw InvalidArgument("preservation: trials must be positive");

  std::vector<double> errors;
  errors.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    BuilderSpec trial = spec;
    trial.seed = derive_seed(spec.seed, t);
    const Projection r = build(trial);
    Rng pick(derive_seed(trial.seed, kVectorStream));
    const auto row = static_cast<std::size_t>(pick.below(vectors.rows()));
    errors.push_back(relative_error(vectors.row(row), r));
  }
  return errors;
}

std::vector<PreservationEstimate> estimate_preservation_curve(const DenseMatrix& vectors,
                                                              const BuilderSpec& spec,
                                                              std::span<const double> epsilons,
                                                              std::size_t trials) {
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw InvalidArgument("preservation: epsilon must be positive");
  }
  const auto errors = sample_relative_errors(vectors, spec, trials);
  double mean = 0.0;
  for (double e : errors) mean += e;
  mean /= static_cast<double>(errors.size());

  std::vector<PreservationEstimate> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    // |‖Rx‖/‖x‖ - 1| <= eps is the two-sided interval condition.
    const auto hits = std::count_if(errors.begin(), errors.end(),
                                    [eps](double e) { return e <= eps; });
    out.push_back({eps, trials, static_cast<double>(hits) / static_cast<double>(trials), mean});
  }
  return out;
}

PreservationEstimate estimate_preservation_probability(const DenseMatrix& vectors,
                                                       const BuilderSpec& spec, double epsilon,
                                                       std::size_t trials) {
  const double eps[] = {epsilon};
  return estimate_preservation_curve(vectors, spec, eps, trials).front();
}

double separability_j(const DenseMatrix& features, std::span<const int> labels) {
  const std::size_t m = features.rows();
  const std::size_t n = features.cols();
  if (labels.size() != m) throw ShapeError("separability_j: label count differs from samples");
  if (m == 0) throw InvalidArgument("separability_j: empty dataset");

  int max_label = -1;
  for (int l : labels) {
    if (l < 0) throw InvalidArgument("separability_j: negative label");
    max_label = std::max(max_label, l);
  }
  const auto c = static_cast<std::size_t>(max_label) + 1;
  if (c < 2) throw InvalidArgument("separability_j: need at least two classes");

  std::vector<std::size_t> size(c, 0);
  std::vector<double> class_mean(c * n, 0.0);
  std::vector<double> grand_mean(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto l = static_cast<std::size_t>(labels[i]);
    ++size[l];
    const auto x = features.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      class_mean[l * n + j] += x[j];
      grand_mean[j] += x[j];
    }
  }
  for (std::size_t l = 0; l < c; ++l) {
    if (size[l] == 0) {
      throw InvalidArgument("separability_j: class " + std::to_string(l) + " is empty");
    }
    for (std::size_t j = 0; j < n; ++j) class_mean[l * n + j] /= static_cast<double>(size[l]);
  }
  for (double& g : grand_mean) g /= static_cast<double>(m);

  // P_i (1/N_i) sum_j ‖x - s_i‖^2 summed over classes is (1/m) of the total.
  double within = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto l = static_cast<std::size_t>(labels[i]);
    const auto x = features.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double dev = x[j] - class_mean[l * n + j];
      within += dev * dev;
    }
  }
  within /= static_cast<double>(m);

  double between = 0.0;
  for (std::size_t l = 0; l < c; ++l) {
    double dist = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dev = class_mean[l * n + j] - grand_mean[j];
      dist += dev * dev;
    }
    between += static_cast<double>(size[l]) / static_cast<double>(m) * dist;
  }

  if (within == 0.0) {
    throw DegenerateError("separability_j: within-class scatter is zero");
  }
  return between / within;
}

double separability_j(const LabeledDataset& data) {
  return separability_j(data.features, data.labels);
}

std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<long long>>& weight) {
  // Jonker-Volgenant style O(k^3) Hungarian method on cost = -weight,
  // 1-based potentials with a virtual column 0.
  const std::size_t k = weight.size();
  for (const auto& row : weight) {
    if (row.size() != k) throw ShapeError("max_weight_assignment: matrix is not square");
  }
  constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(k + 1, 0), v(k + 1, 0);
  std::vector<std::size_t> match(k + 1, 0), way(k + 1, 0);
  for (std::size_t i = 1; i <= k; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<long long> minv(k + 1, kInf);
    std::vector<bool> used(k + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      long long delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const long long cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= k; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(k);
  for (std::size_t j = 1; j <= k; ++j) {
    if (match[j] != 0) assignment[match[j] - 1] = j - 1;
  }
  return assignment;
}

double clustering_accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    throw InvalidArgument("clustering_accuracy: length mismatch (" +
                          std::to_string(predicted.size()) + " vs " +
                          std::to_string(truth.size()) + ")");
  }
  if (truth.empty()) throw InvalidArgument("clustering_accuracy: empty labelling");

  std::map<int, std::size_t> pred_id, truth_id;
  for (int p : predicted) pred_id.emplace(p, 0);
  for (int t : truth) truth_id.emplace(t, 0);
  std::size_t next = 0;
  for (auto& [label, id] : pred_id) id = next++;
  next = 0;
  for (auto& [label, id] : truth_id) id = next++;

  const std::size_t k = std::max(pred_id.size(), truth_id.size());
  std::vector<std::vector<long long>> table(k, std::vector<long long>(k, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++table[pred_id[predicted[i]]][truth_id[truth[i]]];
  }
  const auto assignment = max_weight_assignment(table);
  long long agree = 0;
  for (std::size_t p = 0; p < k; ++p) agree += table[p][assignment[p]];
  return static_cast<double>(agree) / static_cast<double>(truth.size());
}

}  // namespace ssse
