#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ssse/builders.hpp"
#include "ssse/dataset.hpp"
#include "ssse/matrix.hpp"

namespace ssse {

/// Nonzeros per row of a one-nonzero-per-column projection, with the
/// closed-form row statistics for both the balanced (S-SSE) and the
/// with-replacement (SE) constructions. Variances are population variances
/// over the d rows.
struct RowStats {
  std::vector<std::size_t> counts;
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  std::size_t r = 0;  ///< floor(n/d)
  std::size_t q = 0;  ///< n mod d
  double theo_mean = 0.0;      ///< n/d
  double theo_var_ssse = 0.0;  ///< q/d - (q/d)^2
  double theo_var_se = 0.0;    ///< n (1/d)(1 - 1/d)
};

RowStats row_nnz_counts(const SparseProjection& r);

/// |‖Rx‖ / ‖x‖ - 1|. Throws InvalidArgument for a zero x.
double relative_error(std::span<const double> x, const SparseProjection& r);
double relative_error(std::span<const double> x, const DenseProjection& r);
double relative_error(std::span<const double> x, const Projection& r);

struct PreservationEstimate {
  double epsilon = 0.0;
  std::size_t trials = 0;
  double p_hat = 0.0;  ///< fraction of trials with relative error <= epsilon
  double mean_rel_error = 0.0;
};

/// Relative error of `trials` independent (matrix, vector) draws. Trial t
/// builds a fresh matrix with seed derive_seed(spec.seed, t) and evaluates
/// the row of `vectors` chosen by stream 2 of that seed.
std::vector<double> sample_relative_errors(const DenseMatrix& vectors, const BuilderSpec& spec,
                                           std::size_t trials);

/// Fraction of trials where (1-eps)‖x‖ <= ‖Rx‖ <= (1+eps)‖x‖.
PreservationEstimate estimate_preservation_probability(const DenseMatrix& vectors,
                                                       const BuilderSpec& spec, double epsilon,
                                                       std::size_t trials);

/// Same trials evaluated against several tolerances at once.
std::vector<PreservationEstimate> estimate_preservation_curve(const DenseMatrix& vectors,
                                                              const BuilderSpec& spec,
                                                              std::span<const double> epsilons,
                                                              std::size_t trials);

/// tr(S_b) / tr(S_w) with class priors N_i / m. Throws DegenerateError when
/// the within-class scatter is zero.
double separability_j(const DenseMatrix& features, std::span<const int> labels);
double separability_j(const LabeledDataset& data);

/// Best fraction of agreeing points over one-to-one matchings between
/// predicted cluster ids and truth labels. Label values are arbitrary ints.
double clustering_accuracy(std::span<const int> predicted, std::span<const int> truth);

/// Maximum-weight perfect matching on a square matrix (Hungarian method).
/// Returns assignment[row] = column.
std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<long long>>& weight);

}  // namespace ssse
