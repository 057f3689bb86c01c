#include "ssse/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "ssse/clustering.hpp"
#include "ssse/errors.hpp"
#include "ssse/metrics.hpp"
#include "ssse/rng.hpp"

namespace ssse {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  const auto us =
      std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
  return static_cast<double>(us) * 1e-6;
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased; 0 for a single value
  double std_error = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.var = ss / static_cast<double>(xs.size() - 1);
    m.std_error = std::sqrt(m.var / static_cast<double>(xs.size()));
  }
  return m;
}

Record base_record(Experiment e, std::string method, std::size_t n, std::size_t d,
                   std::size_t trials, std::uint64_t seed) {
  Record r;
  r.experiment = std::string(experiment_name(e));
  r.method = std::move(method);
  r.n = n;
  r.d = d;
  r.compression = static_cast<double>(d) / static_cast<double>(n);
  r.trials = trials;
  r.seed = seed;
  return r;
}

Record metric_record(Record base, std::string metric, double value,
                     std::optional<double> std_error = std::nullopt) {
  base.metric = std::move(metric);
  base.value = value;
  base.std_error = std_error;
  return base;
}

Record failure_record(Record base, std::string metric, const std::exception& e) {
  base.metric = std::move(metric);
  base.value = std::numeric_limits<double>::quiet_NaN();
  base.status = std::string("error: ") + e.what();
  return base;
}

void require_trials(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw InvalidArgument("experiment: trials must be positive");
}

void require_d_values(const ExperimentConfig& cfg, std::size_t n) {
  if (cfg.d_values.empty()) throw InvalidArgument("experiment: empty d sweep");
  for (auto d : cfg.d_values) {
    if (d == 0 || d > n) {
      throw InvalidArgument("experiment: d = " + std::to_string(d) + " outside [1, " +
                            std::to_string(n) + "]");
    }
  }
}

BuilderSpec spec_for(const ExperimentConfig& cfg, Method m, std::size_t n, std::size_t d,
                     std::uint64_t seed) {
  return BuilderSpec{m, n, d, cfg.kappa, seed};
}

}  // namespace

std::string_view experiment_name(Experiment e) noexcept {
  switch (e) {
    case Experiment::Stability: return "stability";
    case Experiment::Separability: return "separability";
    case Experiment::RelErrorVsD: return "rel-error";
    case Experiment::PVsD: return "p-vs-d";
    case Experiment::PVsEps: return "p-vs-eps";
    case Experiment::KMeans: return "kmeans";
  }
  return "unknown";
}

std::string cell_id(Experiment e, Method m, std::size_t n, std::size_t d) {
  return std::string(experiment_name(e)) + "/" + std::string(method_name(m)) +
         "/n=" + std::to_string(n) + "/d=" + std::to_string(d);
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::string_view id) {
  return derive_seed(master_seed, hash_label(id));
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::string_view id, std::size_t trial) {
  return derive_seed(cell_seed(master_seed, id), trial);
}

std::uint64_t kmeans_run_seed(std::uint64_t master_seed, std::size_t run) {
  return derive_seed(cell_seed(master_seed, "kmeans/clustering"), run);
}

std::size_t dimension_for_compression(double compression, std::size_t n) {
  if (!(compression > 0.0 && compression <= 1.0)) {
    throw InvalidArgument("compression factor " + std::to_string(compression) +
                          " outside (0, 1]");
  }
  const auto d = static_cast<std::size_t>(std::llround(compression * static_cast<double>(n)));
  return std::clamp<std::size_t>(d, 1, n);
}

// ---------------------------------------------------------------------------

std::vector<Record> run_stability(const ExperimentConfig& cfg) {
  require_trials(cfg);
  const bool has_ssse = std::count(cfg.methods.begin(), cfg.methods.end(), Method::SSse) > 0;
  const bool has_se = std::count(cfg.methods.begin(), cfg.methods.end(), Method::Se) > 0;
  if (!has_ssse || !has_se) throw InvalidArgument("stability: methods must include s-sse and se");
  for (auto m : cfg.methods) {
    if (!is_column_sparse(m)) {
      throw InvalidArgument("stability: method " + std::string(method_name(m)) +
                            " has no row-count structure");
    }
  }
  if (cfg.n_values.empty() || cfg.d_values.empty()) {
    throw InvalidArgument("stability: n and d sweeps must be nonempty");
  }
  if (std::find(cfg.d_values.begin(), cfg.d_values.end(), 0U) != cfg.d_values.end()) {
    throw InvalidArgument("stability: d must be positive");
  }
  // n and d form a cross product; pairs with d > n are skipped.
  const auto max_n = *std::max_element(cfg.n_values.begin(), cfg.n_values.end());
  const auto min_d = *std::min_element(cfg.d_values.begin(), cfg.d_values.end());
  if (min_d > max_n) throw InvalidArgument("stability: every d exceeds every n");

  std::vector<Record> out;
  for (auto n : cfg.n_values) {
    for (auto d : cfg.d_values) {
      if (d > n) continue;
      std::vector<double> var_ssse, var_se;
      for (auto m : {Method::SSse, Method::Se}) {
        const auto start = Clock::now();
        const auto id = cell_id(Experiment::Stability, m, n, d);
        const auto seed = cell_seed(cfg.master_seed, id);
        auto& vars = m == Method::SSse ? var_ssse : var_se;
        double count_mean = 0.0;
        RowStats stats;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
          const auto bseed = derive_seed(seed, t);
          const auto r = m == Method::SSse ? build_s_sse(spec_for(cfg, m, n, d, bseed))
                                           : build_se(spec_for(cfg, m, n, d, bseed));
          stats = row_nnz_counts(r);
          vars.push_back(stats.empirical_var);
          count_mean += stats.empirical_mean;
          if (cfg.per_build_rows) {
            auto rec = metric_record(base_record(Experiment::Stability, std::string(method_name(m)),
                                                 n, d, 1, bseed),
                                     "row_var", stats.empirical_var);
            out.push_back(std::move(rec));
          }
        }
        const auto mom = moments(vars);
        auto base = base_record(Experiment::Stability, std::string(method_name(m)), n, d,
                                cfg.trials, cfg.master_seed);
        const double theory = m == Method::SSse ? stats.theo_var_ssse : stats.theo_var_se;
        const double wall = seconds_since(start);
        base.wall_time_seconds = wall;
        out.push_back(metric_record(base, "row_var_mean", mom.mean, mom.std_error));
        out.push_back(metric_record(base, "row_var_var", mom.var));
        out.push_back(metric_record(base, "row_var_theory", theory));
        out.push_back(metric_record(base, "count_mean",
                                    count_mean / static_cast<double>(cfg.trials)));
      }
      std::size_t below = 0;
      for (std::size_t t = 0; t < cfg.trials; ++t) below += var_ssse[t] < var_se[t] ? 1 : 0;
      out.push_back(metric_record(
          base_record(Experiment::Stability, "s-sse-vs-se", n, d, cfg.trials, cfg.master_seed),
          "var_ssse_below_se", static_cast<double>(below) / static_cast<double>(cfg.trials)));
    }
  }
  return out;
}

std::vector<Record> run_separability(const ExperimentConfig& cfg, const LabeledDataset& data) {
  require_trials(cfg);
  const std::size_t n = data.dim();
  require_d_values(cfg, n);
  if (data.class_count < 2) throw InvalidArgument("separability: need at least two classes");

  std::vector<Record> out;
  {
    auto base = base_record(Experiment::Separability, "none", n, n, 1, cfg.master_seed);
    const auto start = Clock::now();
    try {
      const double j = separability_j(data);
      base.wall_time_seconds = seconds_since(start);
      out.push_back(metric_record(base, "j_mean", j));
      out.push_back(metric_record(base, "j_var", 0.0));
    } catch (const DegenerateError& e) {
      out.push_back(failure_record(base, "j_mean", e));
    }
  }

  for (auto d : cfg.d_values) {
    for (auto m : cfg.methods) {
      const auto start = Clock::now();
      const auto id = cell_id(Experiment::Separability, m, n, d);
      const auto seed = cell_seed(cfg.master_seed, id);
      auto base = base_record(Experiment::Separability, std::string(method_name(m)), n, d,
                              cfg.trials, cfg.master_seed);
      try {
        std::vector<double> js;
        js.reserve(cfg.trials);
        for (std::size_t t = 0; t < cfg.trials; ++t) {
          const auto r = build(spec_for(cfg, m, n, d, derive_seed(seed, t)));
          js.push_back(separability_j(project(data.features, r), data.labels));
        }
        const auto mom = moments(js);
        base.wall_time_seconds = seconds_since(start);
        out.push_back(metric_record(base, "j_mean", mom.mean, mom.std_error));
        out.push_back(metric_record(base, "j_var", mom.var));
      } catch (const Error& e) {
        base.wall_time_seconds = seconds_since(start);
        out.push_back(failure_record(base, "j_mean", e));
      }
    }
  }
  return out;
}

std::vector<Record> run_distance_experiments(const ExperimentConfig& cfg, const DenseMatrix& data) {
  require_trials(cfg);
  const auto e = cfg.experiment;
  if (e != Experiment::RelErrorVsD && e != Experiment::PVsD && e != Experiment::PVsEps) {
    throw InvalidArgument("distance: experiment must be rel-error, p-vs-d or p-vs-eps");
  }
  const std::size_t n = data.cols();
  require_d_values(cfg, n);
  if (e != Experiment::RelErrorVsD && cfg.epsilons.empty()) {
    throw InvalidArgument("distance: no epsilon values");
  }

  std::vector<Record> out;
  for (auto d : cfg.d_values) {
    for (auto m : cfg.methods) {
      const auto start = Clock::now();
      const auto id = cell_id(e, m, n, d);
      const auto spec = spec_for(cfg, m, n, d, cell_seed(cfg.master_seed, id));
      auto base = base_record(e, std::string(method_name(m)), n, d, cfg.trials, cfg.master_seed);
      if (e == Experiment::RelErrorVsD) {
        const auto mom = moments(sample_relative_errors(data, spec, cfg.trials));
        base.wall_time_seconds = seconds_since(start);
        out.push_back(metric_record(base, "rel_error_mean", mom.mean, mom.std_error));
        continue;
      }
      const auto curve = estimate_preservation_curve(data, spec, cfg.epsilons, cfg.trials);
      base.wall_time_seconds = seconds_since(start);
      for (const auto& est : curve) {
        auto rec = metric_record(base, "p_hat", est.p_hat,
                                 std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                                           static_cast<double>(est.trials)));
        rec.epsilon = est.epsilon;
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<Record> run_kmeans_experiment(const ExperimentConfig& cfg, const LabeledDataset& data) {
  require_trials(cfg);
  if (data.class_count < 1) throw InvalidArgument("kmeans experiment: unlabeled data");
  if (cfg.compression.empty()) throw InvalidArgument("kmeans experiment: empty compression sweep");
  const std::size_t n = data.dim();
  const std::size_t m_samples = data.size();

  KMeansConfig km;
  km.k = static_cast<std::size_t>(data.class_count);
  km.replicates = cfg.replicates;

  std::vector<Record> out;
  {
    auto base = base_record(Experiment::KMeans, "none", n, n, cfg.trials, cfg.master_seed);
    std::vector<double> acc;
    double secs = 0.0;
    for (std::size_t run = 0; run < cfg.trials; ++run) {
      km.seed = kmeans_run_seed(cfg.master_seed, run);
      const auto start = Clock::now();
      const auto res = kmeans(data.features, km);
      secs += seconds_since(start);
      acc.push_back(clustering_accuracy(res.assignments, data.labels));
    }
    const auto mom = moments(acc);
    base.wall_time_seconds = secs / static_cast<double>(cfg.trials);
    out.push_back(metric_record(base, "accuracy", mom.mean, mom.std_error));
  }

  for (double c : cfg.compression) {
    const std::size_t d = dimension_for_compression(c, n);
    for (auto m : cfg.methods) {
      const auto id = cell_id(Experiment::KMeans, m, n, d);
      const auto seed = cell_seed(cfg.master_seed, id);
      auto base = base_record(Experiment::KMeans, std::string(method_name(m)), n, d, cfg.trials,
                              cfg.master_seed);
      try {
        // Warm-up, untimed.
        (void)project(data.features, build(spec_for(cfg, m, n, d, derive_seed(seed, 0))));

        std::vector<double> acc;
        double build_secs = 0.0, project_secs = 0.0, cluster_secs = 0.0;
        double stored = 0.0;
        for (std::size_t run = 0; run < cfg.trials; ++run) {
          auto start = Clock::now();
          const auto r = build(spec_for(cfg, m, n, d, derive_seed(seed, run)));
          build_secs += seconds_since(start);

          start = Clock::now();
          const auto projected = project(data.features, r);
          project_secs += seconds_since(start);

          km.seed = kmeans_run_seed(cfg.master_seed, run);
          start = Clock::now();
          const auto res = kmeans(projected, km);
          cluster_secs += seconds_since(start);
          acc.push_back(clustering_accuracy(res.assignments, data.labels));
          stored = std::holds_alternative<SparseProjection>(r) ? static_cast<double>(n)
                                                               : static_cast<double>(n * d);
        }
        const double runs = static_cast<double>(cfg.trials);
        const auto mom = moments(acc);
        // Work of one projection: one add per input entry for the column-sparse
        // kernels, d multiply-adds per entry for dense ones.
        const double work = static_cast<double>(m_samples * n) * (is_column_sparse(m) ? 1.0 : static_cast<double>(d));

        auto acc_rec = metric_record(base, "accuracy", mom.mean, mom.std_error);
        acc_rec.wall_time_seconds = cluster_secs / runs;
        auto build_rec = metric_record(base, "build_matrix", stored);
        build_rec.wall_time_seconds = build_secs / runs;
        auto proj_rec = metric_record(base, "project", work);
        proj_rec.wall_time_seconds = project_secs / runs;
        out.push_back(std::move(acc_rec));
        out.push_back(std::move(build_rec));
        out.push_back(std::move(proj_rec));
      } catch (const Error& e) {
        out.push_back(failure_record(base, "accuracy", e));
      }
    }
  }
  return out;
}

}  // namespace ssse
