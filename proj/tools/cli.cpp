#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssse/builders.hpp"
#include "ssse/data_io.hpp"
#include "ssse/errors.hpp"
#include "ssse/experiments.hpp"

namespace ssse::cli {

namespace {

using nlohmann::json;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 0;  // 0: per-command default
  std::string out;
  std::string format = "csv";
  bool fast = false;
  std::string config;
};

struct DataOptions {
  std::string in;
  bool minmax = false;
  std::string kind;
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> means;
  double variance = 0.0;
  std::uint64_t data_seed = 1;
};

struct Options {
  GlobalOptions global;
  DataOptions data;
  std::vector<std::string> methods;
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> d_values;
  std::vector<double> compression;
  std::vector<double> epsilons;
  std::string mode;
  std::string method = "s-sse";
  double kappa = 3.0;
  std::size_t replicates = 20;
  bool summary_only = false;
};

std::vector<Method> resolve_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& name : names) {
    const auto m = parse_method(name);
    if (!m) throw InvalidArgument("unknown method '" + name + "'");
    out.push_back(*m);
  }
  return out;
}

std::size_t resolve_trials(const GlobalOptions& g, std::size_t fallback) {
  std::size_t t = g.trials != 0 ? g.trials : fallback;
  if (g.fast && g.trials == 0) t = std::min<std::size_t>(t, 500);
  return t;
}

ReportFormat resolve_format(const GlobalOptions& g) {
  const auto f = parse_report_format(g.format);
  if (!f) throw InvalidArgument("unknown format '" + g.format + "'");
  return *f;
}

LabeledDataset load_data(const DataOptions& d) {
  LabeledDataset ds = load_libsvm(d.in);
  if (d.minmax) minmax_scale(ds.features);
  return ds;
}

LabeledDataset synth(const DataOptions& d, SyntheticKind fallback_kind, std::size_t m,
                     std::size_t n, std::vector<double> means, double variance) {
  SyntheticSpec spec;
  if (!d.kind.empty()) {
    const auto k = parse_synthetic_kind(d.kind);
    if (!k) throw InvalidArgument("unknown data kind '" + d.kind + "'");
    spec.kind = *k;
  } else {
    spec.kind = fallback_kind;
  }
  spec.m = d.m != 0 ? d.m : m;
  spec.n = d.n != 0 ? d.n : n;
  spec.class_means = d.means.empty() ? std::move(means) : d.means;
  spec.class_variance = d.variance > 0.0 ? d.variance : variance;
  spec.seed = d.data_seed;
  return generate_synthetic(spec);
}

std::vector<std::size_t> step_range(std::size_t from, std::size_t to, std::size_t step) {
  std::vector<std::size_t> out;
  for (std::size_t v = from; v <= to; v += step) out.push_back(v);
  return out;
}

void emit_records(std::vector<Record> records, const GlobalOptions& g, std::ostream& out) {
  const auto fmt = resolve_format(g);
  if (g.out.empty()) {
    write_report(std::move(records), fmt, out);
  } else {
    write_report(std::move(records), fmt, std::filesystem::path(g.out));
  }
}

void emit_dataset(const LabeledDataset& ds, const GlobalOptions& g, std::ostream& out) {
  if (g.out.empty()) {
    write_libsvm(out, ds);
  } else {
    save_libsvm(g.out, ds);
  }
}

void print_config(std::ostream& err, const std::string& command, json cfg, const GlobalOptions& g) {
  cfg["command"] = command;
  cfg["seed"] = g.seed;
  cfg["out"] = g.out.empty() ? "-" : g.out;
  cfg["format"] = g.format;
  err << "config: " << cfg.dump() << '\n';
}

json methods_json(const std::vector<Method>& ms) {
  json a = json::array();
  for (auto m : ms) a.push_back(std::string(method_name(m)));
  return a;
}

// --config: every key of a flat JSON object becomes "--key value" unless the
// same flag was given explicitly. Arrays are joined with commas; true
// booleans become bare flags.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;

  std::ifstream in(*path);
  if (!in) throw IoError("cannot open config " + *path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("config ") + *path + ": " + e.what());
  }
  if (!cfg.is_object()) throw ParseError(0, "config " + *path + ": expected a JSON object");

  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  auto scalar = [](const json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };

  std::vector<std::string> injected;
  std::optional<std::string> command;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") {
      command = value.get<std::string>();
      continue;
    }
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
      continue;
    }
    injected.push_back(flag);
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) joined += (joined.empty() ? "" : ",") + scalar(item);
      injected.push_back(joined);
    } else {
      injected.push_back(scalar(value));
    }
  }
  const bool has_command = args.size() > 1 && args[1].rfind("-", 0) != 0;
  if (!has_command && command) args.insert(args.begin() + 1, *command);
  const auto at = args.begin() + (args.size() > 1 ? 2 : 1);
  args.insert(at, injected.begin(), injected.end());
  return args;
}

// ---------------------------------------------------------------------------

int run_gen(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.data.kind.empty()) throw InvalidArgument("gen: --kind is required");
  DataOptions d = o.data;
  d.data_seed = o.global.seed;
  if (d.m == 0 || d.n == 0) throw InvalidArgument("gen: --m and --n are required");
  const auto ds = synth(d, SyntheticKind::Uniform01, d.m, d.n, {}, 1.0);
  print_config(err, "gen",
               {{"kind", d.kind}, {"m", d.m}, {"n", d.n}, {"means", d.means},
                {"var", d.variance > 0.0 ? d.variance : 1.0}},
               o.global);
  emit_dataset(ds, o.global, out);
  return 0;
}

int run_project(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ds = load_data(o.data);
  const auto method = parse_method(o.method);
  if (!method) throw InvalidArgument("unknown method '" + o.method + "'");
  std::size_t d = 0;
  if (!o.d_values.empty()) {
    d = o.d_values.front();
  } else if (!o.compression.empty()) {
    d = dimension_for_compression(o.compression.front(), ds.dim());
  } else {
    throw InvalidArgument("project: --d or --compression is required");
  }
  print_config(err, "project",
               {{"in", o.data.in}, {"method", o.method}, {"n", ds.dim()}, {"d", d},
                {"kappa", o.kappa}, {"minmax", o.data.minmax}},
               o.global);

  using Clock = std::chrono::steady_clock;
  auto start = Clock::now();
  const auto r = build(BuilderSpec{*method, ds.dim(), d, o.kappa, o.global.seed});
  const double build_secs = std::chrono::duration<double>(Clock::now() - start).count();
  start = Clock::now();
  LabeledDataset projected = ds;
  projected.features = project(ds.features, r);
  const double project_secs = std::chrono::duration<double>(Clock::now() - start).count();
  err << "timing: build_seconds=" << build_secs << " project_seconds=" << project_secs << '\n';
  emit_dataset(projected, o.global, out);
  return 0;
}

int run_stability_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::Stability;
  cfg.methods = resolve_methods(o.methods.empty() ? std::vector<std::string>{"s-sse", "se"}
                                                  : o.methods);
  cfg.n_values = o.n_values;
  cfg.d_values = o.d_values;
  cfg.trials = resolve_trials(o.global, 1000);
  cfg.master_seed = o.global.seed;
  cfg.per_build_rows = !o.summary_only;
  print_config(err, "stability",
               {{"methods", methods_json(cfg.methods)}, {"n", cfg.n_values}, {"d", cfg.d_values},
                {"trials", cfg.trials}, {"summary_only", o.summary_only}},
               o.global);
  emit_records(run_stability(cfg), o.global, out);
  return 0;
}

int run_separability_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ds = o.data.in.empty()
                      ? synth(o.data, SyntheticKind::GaussianClasses, 4000, 100, {0, 2, 4, 6}, 0.5)
                      : load_data(o.data);
  ExperimentConfig cfg;
  cfg.experiment = Experiment::Separability;
  cfg.methods = resolve_methods(o.methods.empty() ? std::vector<std::string>{"s-sse", "se"}
                                                  : o.methods);
  cfg.d_values = o.d_values.empty() ? step_range(10, ds.dim(), 10) : o.d_values;
  cfg.trials = resolve_trials(o.global, 1000);
  cfg.master_seed = o.global.seed;
  cfg.kappa = o.kappa;
  print_config(err, "separability",
               {{"data", o.data.in.empty() ? "synthetic" : o.data.in},
                {"m", ds.size()}, {"n", ds.dim()}, {"classes", ds.class_count},
                {"data_seed", o.data.data_seed}, {"methods", methods_json(cfg.methods)},
                {"d", cfg.d_values}, {"trials", cfg.trials}},
               o.global);
  emit_records(run_separability(cfg, ds), o.global, out);
  return 0;
}

int run_distance_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  if (o.mode == "rel-error") {
    cfg.experiment = Experiment::RelErrorVsD;
  } else if (o.mode == "p-vs-d") {
    cfg.experiment = Experiment::PVsD;
  } else if (o.mode == "p-vs-eps") {
    cfg.experiment = Experiment::PVsEps;
  } else {
    throw InvalidArgument("distance: --mode must be rel-error, p-vs-d or p-vs-eps");
  }
  const bool rel = cfg.experiment == Experiment::RelErrorVsD;
  const auto ds = o.data.in.empty()
                      ? synth(o.data, SyntheticKind::Uniform01, 1000, rel ? 1000 : 200, {}, 1.0)
                      : load_data(o.data);
  cfg.methods = resolve_methods(o.methods.empty() ? std::vector<std::string>{"s-sse", "se"}
                                                  : o.methods);
  if (!o.d_values.empty()) {
    cfg.d_values = o.d_values;
  } else if (cfg.experiment == Experiment::PVsEps) {
    cfg.d_values = {std::min<std::size_t>(80, ds.dim())};
  } else {
    cfg.d_values = step_range(20, std::min<std::size_t>(200, ds.dim()), 20);
  }
  if (!o.epsilons.empty()) {
    cfg.epsilons = o.epsilons;
  } else if (cfg.experiment == Experiment::PVsEps) {
    for (int i = 1; i <= 10; ++i) cfg.epsilons.push_back(0.05 * i);
  } else if (cfg.experiment == Experiment::PVsD) {
    cfg.epsilons = {0.1};
  }
  cfg.trials = resolve_trials(o.global, rel ? 100 : 10000);
  cfg.master_seed = o.global.seed;
  cfg.kappa = o.kappa;
  print_config(err, "distance",
               {{"mode", o.mode}, {"data", o.data.in.empty() ? "synthetic" : o.data.in},
                {"m", ds.size()}, {"n", ds.dim()}, {"data_seed", o.data.data_seed},
                {"methods", methods_json(cfg.methods)}, {"d", cfg.d_values},
                {"eps", cfg.epsilons}, {"trials", cfg.trials}},
               o.global);
  emit_records(run_distance_experiments(cfg, ds.features), o.global, out);
  return 0;
}

int run_kmeans_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.data.in.empty()) throw InvalidArgument("kmeans: --in is required");
  const auto ds = load_data(o.data);
  ExperimentConfig cfg;
  cfg.experiment = Experiment::KMeans;
  cfg.methods = resolve_methods(o.methods.empty()
                                    ? std::vector<std::string>{"s-sse", "se", "de"}
                                    : o.methods);
  if (o.compression.empty()) {
    for (int i = 1; i <= 10; ++i) cfg.compression.push_back(0.1 * i);
  } else {
    cfg.compression = o.compression;
  }
  cfg.trials = resolve_trials(o.global, 10);
  cfg.master_seed = o.global.seed;
  cfg.kappa = o.kappa;
  cfg.replicates = o.replicates;
  print_config(err, "kmeans",
               {{"in", o.data.in}, {"m", ds.size()}, {"n", ds.dim()}, {"k", ds.class_count},
                {"minmax", o.data.minmax}, {"methods", methods_json(cfg.methods)},
                {"compression", cfg.compression}, {"runs", cfg.trials},
                {"replicates", cfg.replicates}},
               o.global);
  emit_records(run_kmeans_experiment(cfg, ds), o.global, out);
  return 0;
}

int run_report_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.data.in.empty()) throw InvalidArgument("report: --in is required");
  std::ifstream in(o.data.in, std::ios::binary);
  if (!in) throw IoError("cannot open " + o.data.in);
  auto records = read_report_csv(in);
  print_config(err, "report", {{"in", o.data.in}, {"records", records.size()}}, o.global);
  emit_records(std::move(records), o.global, out);
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse random projection toolkit: stable sparse subspace embeddings, "
               "baselines and experiment sweeps.",
               "ssse"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  auto& g = o.global;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Trials / runs per sweep cell (0: command default)");
  app.add_option("--out", g.out, "Output path (default: stdout)");
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_flag("--fast", g.fast, "Cap default trial counts at 500");
  app.add_option("--config", g.config, "JSON file with flag values");

  auto add_methods = [&](CLI::App* sub, const char* help) {
    sub->add_option("--methods", o.methods, help)->delimiter(',');
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--in", o.data.in, "LIBSVM input file");
    sub->add_flag("--minmax", o.data.minmax, "Min-max scale every feature to [0, 1]");
  };
  auto add_synthetic = [&](CLI::App* sub) {
    sub->add_option("--kind", o.data.kind, "uniform01 | std-normal | gaussian-classes");
    sub->add_option("--m", o.data.m, "Synthetic sample count");
    sub->add_option("--n", o.data.n, "Synthetic feature count");
    sub->add_option("--means", o.data.means, "Class means (gaussian-classes)")->delimiter(',');
    sub->add_option("--var", o.data.variance, "Class variance (gaussian-classes)");
  };

  auto* gen = app.add_subcommand("gen", "Generate a synthetic LIBSVM dataset");
  add_synthetic(gen);

  auto* proj = app.add_subcommand("project", "Project a LIBSVM dataset");
  add_input(proj);
  proj->add_option("--method", o.method, "s-sse | se | de | achlioptas")->capture_default_str();
  proj->add_option("--d", o.d_values, "Target dimension")->expected(1);
  proj->add_option("--compression", o.compression, "Target dimension as d/n")->expected(1);
  proj->add_option("--kappa", o.kappa, "Achlioptas sparsity parameter")->capture_default_str();

  auto* stab = app.add_subcommand("stability", "Row-count variance of S-SSE vs SE");
  stab->add_option("--n", o.n_values, "Source dimensions")->delimiter(',')->required();
  stab->add_option("--d", o.d_values, "Target dimensions")->delimiter(',')->required();
  add_methods(stab, "Methods (default s-sse,se)");
  stab->add_flag("--summary-only", o.summary_only, "Omit per-build rows");

  auto* sep = app.add_subcommand("separability", "Separability ratio J after projection");
  add_input(sep);
  add_synthetic(sep);
  sep->add_option("--data-seed", o.data.data_seed, "Seed of the synthetic dataset")
      ->capture_default_str();
  sep->add_option("--d", o.d_values, "Target dimensions")->delimiter(',');
  add_methods(sep, "Methods (default s-sse,se)");
  sep->add_option("--kappa", o.kappa, "Achlioptas sparsity parameter");

  auto* dist = app.add_subcommand("distance", "Relative error and preservation probability");
  dist->add_option("--mode", o.mode, "rel-error | p-vs-d | p-vs-eps")
      ->required()
      ->check(CLI::IsMember({"rel-error", "p-vs-d", "p-vs-eps"}));
  add_input(dist);
  add_synthetic(dist);
  dist->add_option("--data-seed", o.data.data_seed, "Seed of the synthetic dataset")
      ->capture_default_str();
  dist->add_option("--d", o.d_values, "Target dimensions")->delimiter(',');
  dist->add_option("--eps", o.epsilons, "Tolerances")->delimiter(',');
  add_methods(dist, "Methods (default s-sse,se)");
  dist->add_option("--kappa", o.kappa, "Achlioptas sparsity parameter");

  auto* km = app.add_subcommand("kmeans", "k-means accuracy and timing after projection");
  add_input(km);
  km->add_option("--compression", o.compression, "Compression factors d/n")->delimiter(',');
  add_methods(km, "Methods (default s-sse,se,de)");
  km->add_option("--replicates", o.replicates, "k-means restarts per run")->capture_default_str();
  km->add_option("--kappa", o.kappa, "Achlioptas sparsity parameter");

  auto* rep = app.add_subcommand("report", "Re-emit a CSV report (sorted) as CSV or JSON");
  rep->add_option("--in", o.data.in, "CSV report")->required();

  if (raw_args.size() < 2) {
    err << app.help();
    return kExitUsage;
  }

  try {
    auto args = expand_config(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(o, out, err);
    if (proj->parsed()) return run_project(o, out, err);
    if (stab->parsed()) return run_stability_cmd(o, out, err);
    if (sep->parsed()) return run_separability_cmd(o, out, err);
    if (dist->parsed()) return run_distance_cmd(o, out, err);
    if (km->parsed()) return run_kmeans_cmd(o, out, err);
    if (rep->parsed()) return run_report_cmd(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace ssse::cli
