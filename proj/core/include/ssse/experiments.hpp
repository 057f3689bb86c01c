#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssse/builders.hpp"
#include "ssse/data_io.hpp"
#include "ssse/dataset.hpp"

namespace ssse {

enum class Experiment { Stability, Separability, RelErrorVsD, PVsD, PVsEps, KMeans };

std::string_view experiment_name(Experiment e) noexcept;

struct ExperimentConfig {
  Experiment experiment = Experiment::Stability;
  std::vector<Method> methods = {Method::SSse, Method::Se};
  std::vector<std::size_t> n_values;  ///< Stability: source dimensions
  std::vector<std::size_t> d_values;  ///< target dimensions (all but KMeans)
  std::vector<double> compression;    ///< KMeans: d/n values in (0, 1]
  std::vector<double> epsilons;       ///< PVsD / PVsEps tolerances
  std::size_t trials = 1000;
  std::uint64_t master_seed = 0;
  double kappa = 3.0;
  bool per_build_rows = true;   ///< Stability: one row per build
  std::size_t replicates = 20;  ///< KMeans
};

// Seed derivation
// ---------------
// Every sweep cell has a textual id, e.g. "separability/s-sse/n=100/d=40".
// Its seed is derive_seed(master, hash_label(id)) and trial t of the cell
// uses derive_seed(cell seed, t). Cells therefore never influence each
// other, whatever the sweep order or method list.

std::string cell_id(Experiment e, Method m, std::size_t n, std::size_t d);
std::uint64_t cell_seed(std::uint64_t master_seed, std::string_view id);
std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view id, std::size_t trial);

/// k-means seed shared by every cell of a k-means sweep for run `run`, so
/// that projected and full-data clusterings start from the same stream.
std::uint64_t kmeans_run_seed(std::uint64_t master_seed, std::size_t run);

/// Row-count variance of `trials` builds per (n, d, method). Methods must be
/// exactly S-SSE and SE. Metrics: row_var (per build, optional),
/// row_var_mean, row_var_var, row_var_theory, count_mean, and
/// var_ssse_below_se (fraction of paired builds with S-SSE strictly lower).
std::vector<Record> run_stability(const ExperimentConfig& cfg);

/// Mean and variance of the separability ratio J over `trials` projections
/// per (method, d), plus a "none" row with J of the unprojected data.
std::vector<Record> run_separability(const ExperimentConfig& cfg, const LabeledDataset& data);

/// RelErrorVsD: rel_error_mean per (method, d).
/// PVsD / PVsEps: p_hat per (method, d, epsilon). The two differ only in
/// which list is swept; trials are shared across epsilons within a cell.
/// Rows of `data` form the evaluation vector set.
std::vector<Record> run_distance_experiments(const ExperimentConfig& cfg, const DenseMatrix& data);

/// For each compression factor and method: build time, projection time and
/// k-means accuracy (k = class count) averaged over `trials` runs, plus a
/// "none" baseline on the full data.
std::vector<Record> run_kmeans_experiment(const ExperimentConfig& cfg, const LabeledDataset& data);

/// d = round(c * n), at least 1.
std::size_t dimension_for_compression(double compression, std::size_t n);

}  // namespace ssse
