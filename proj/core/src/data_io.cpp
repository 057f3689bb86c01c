#include "ssse/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "ssse/errors.hpp"
#include "ssse/rng.hpp"

namespace ssse {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<double> to_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> to_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct SparseRow {
  double label;
  std::vector<std::pair<std::size_t, double>> entries;
};

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// LIBSVM

LabeledDataset parse_libsvm(std::istream& in, std::optional<std::size_t> n_features) {
  std::vector<SparseRow> rows;
  std::size_t width = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    SparseRow row;
    const auto label = to_real(tokens[0]);
    if (!label || !std::isfinite(*label)) {
      throw ParseError(line_no, "malformed label '" + std::string(tokens[0]) + "'");
    }
    row.label = *label;
    std::size_t last = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "malformed token '" + std::string(tok) + "'");
      }
      const auto index = to_uint(tok.substr(0, colon));
      const auto value = to_real(tok.substr(colon + 1));
      if (!index || !value) {
        throw ParseError(line_no, "malformed token '" + std::string(tok) + "'");
      }
      if (*index == 0) throw ParseError(line_no, "feature index 0 (indices are 1-based)");
      if (*index == last) {
        throw ParseError(line_no, "duplicate feature index " + std::to_string(*index));
      }
      if (*index < last) {
        throw ParseError(line_no, "feature index " + std::to_string(*index) +
                                      " is not ascending");
      }
      if (!std::isfinite(*value)) throw ParseError(line_no, "non-finite feature value");
      if (n_features && *index > *n_features) {
        throw ParseError(line_no, "feature index " + std::to_string(*index) +
                                      " exceeds declared width " + std::to_string(*n_features));
      }
      last = static_cast<std::size_t>(*index);
      row.entries.emplace_back(last - 1, *value);
    }
    width = std::max(width, last);
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw IoError("parse_libsvm: read failure");
  if (rows.empty()) throw ParseError(0, "empty LIBSVM input");
  if (n_features) width = *n_features;
  if (width == 0) throw ParseError(0, "LIBSVM input has no features");

  LabeledDataset ds;
  for (const auto& r : rows) ds.label_values.push_back(r.label);
  std::sort(ds.label_values.begin(), ds.label_values.end());
  ds.label_values.erase(std::unique(ds.label_values.begin(), ds.label_values.end()),
                        ds.label_values.end());
  ds.class_count = static_cast<int>(ds.label_values.size());

  std::vector<double> values(rows.size() * width, 0.0);
  ds.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto it = std::lower_bound(ds.label_values.begin(), ds.label_values.end(), rows[i].label);
    ds.labels.push_back(static_cast<int>(it - ds.label_values.begin()));
    for (const auto& [j, v] : rows[i].entries) values[i * width + j] = v;
  }
  ds.features = DenseMatrix(rows.size(), width, std::move(values));
  return ds;
}

LabeledDataset load_libsvm(const std::filesystem::path& path,
                           std::optional<std::size_t> n_features) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_libsvm(in, n_features);
}

void write_libsvm(std::ostream& out, const LabeledDataset& data) {
  const auto& x = data.features;
  if (data.labels.size() != x.rows()) throw ShapeError("write_libsvm: label count mismatch");
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const int label = data.labels[i];
    if (!data.label_values.empty()) {
      out << format_real(data.label_values.at(static_cast<std::size_t>(label)));
    } else {
      out << label;
    }
    const auto row = x.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      const bool keep_width = i == 0 && j + 1 == row.size();
      if (row[j] != 0.0 || keep_width) out << ' ' << (j + 1) << ':' << format_real(row[j]);
    }
    out << '\n';
  }
  if (!out) throw IoError("write_libsvm: write failure");
}

void save_libsvm(const std::filesystem::path& path, const LabeledDataset& data) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_libsvm(out, data);
}

void minmax_scale(DenseMatrix& features) {
  for (std::size_t j = 0; j < features.cols(); ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < features.rows(); ++i) {
      lo = std::min(lo, features(i, j));
      hi = std::max(hi, features(i, j));
    }
    const double range = hi - lo;
    for (std::size_t i = 0; i < features.rows(); ++i) {
      features(i, j) = range > 0.0 ? (features(i, j) - lo) / range : 0.0;
    }
  }
}

// ---------------------------------------------------------------------------
// Synthetic data

std::string_view synthetic_kind_name(SyntheticKind k) noexcept {
  switch (k) {
    case SyntheticKind::Uniform01: return "uniform01";
    case SyntheticKind::StdNormal: return "std-normal";
    case SyntheticKind::GaussianClasses: return "gaussian-classes";
  }
  return "unknown";
}

std::optional<SyntheticKind> parse_synthetic_kind(std::string_view name) noexcept {
  if (name == "uniform01" || name == "uniform") return SyntheticKind::Uniform01;
  if (name == "std-normal" || name == "normal") return SyntheticKind::StdNormal;
  if (name == "gaussian-classes") return SyntheticKind::GaussianClasses;
  return std::nullopt;
}

LabeledDataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.m == 0 || spec.n == 0) throw InvalidArgument("generate_synthetic: m and n must be positive");
  const bool classes = spec.kind == SyntheticKind::GaussianClasses;
  if (classes) {
    if (spec.class_means.empty()) throw InvalidArgument("generate_synthetic: no class means");
    if (!(spec.class_variance > 0.0) || !std::isfinite(spec.class_variance)) {
      throw InvalidArgument("generate_synthetic: class variance must be positive");
    }
    if (spec.class_means.size() > spec.m) {
      throw InvalidArgument("generate_synthetic: more classes than samples");
    }
  }

  LabeledDataset ds;
  ds.labels.assign(spec.m, 0);
  ds.class_count = classes ? static_cast<int>(spec.class_means.size()) : 1;
  if (classes) {
    const std::size_t c = spec.class_means.size();
    const std::size_t base = spec.m / c;
    const std::size_t extra = spec.m % c;
    std::size_t i = 0;
    for (std::size_t l = 0; l < c; ++l) {
      const std::size_t count = base + (l < extra ? 1 : 0);
      for (std::size_t s = 0; s < count; ++s) ds.labels[i++] = static_cast<int>(l);
    }
  }

  const double sd = classes ? std::sqrt(spec.class_variance) : 1.0;
  std::vector<double> values(spec.m * spec.n);
  for (std::size_t i = 0; i < spec.m; ++i) {
    Rng rng(derive_seed(spec.seed, i));
    double* row = values.data() + i * spec.n;
    switch (spec.kind) {
      case SyntheticKind::Uniform01:
        for (std::size_t j = 0; j < spec.n; ++j) row[j] = rng.uniform01();
        break;
      case SyntheticKind::StdNormal:
        for (std::size_t j = 0; j < spec.n; ++j) row[j] = rng.normal();
        break;
      case SyntheticKind::GaussianClasses: {
        const double mean = spec.class_means[static_cast<std::size_t>(ds.labels[i])];
        for (std::size_t j = 0; j < spec.n; ++j) row[j] = mean + sd * rng.normal();
        break;
      }
    }
  }
  ds.features = DenseMatrix(spec.m, spec.n, std::move(values));
  return ds;
}

// ---------------------------------------------------------------------------
// Reports

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  return std::nullopt;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "experiment", "method", "n",      "d",    "compression", "epsilon",           "metric",
      "value",      "stderr", "trials", "seed", "wall_time_seconds", "status"};
  return cols;
}

void sort_records(std::vector<Record>& records) {
  std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    const double ea = a.epsilon.value_or(-std::numeric_limits<double>::infinity());
    const double eb = b.epsilon.value_or(-std::numeric_limits<double>::infinity());
    return std::tie(a.method, a.d, ea) < std::tie(b.method, b.d, eb);
  });
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string optional_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

std::vector<std::string> record_fields(const Record& r) {
  return {r.experiment,
          r.method,
          std::to_string(r.n),
          std::to_string(r.d),
          format_real(r.compression),
          optional_real(r.epsilon),
          r.metric,
          format_real(r.value),
          optional_real(r.std_error),
          std::to_string(r.trials),
          std::to_string(r.seed),
          format_real(r.wall_time_seconds),
          r.status};
}

std::string json_real(double v) { return std::isfinite(v) ? format_real(v) : "null"; }

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

void write_json(const std::vector<Record>& records, std::ostream& out) {
  if (records.empty()) {
    out << "[]\n";
    return;
  }
  out << "[\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const Record& r = records[i];
    out << "  {\"experiment\": " << json_string(r.experiment)
        << ", \"method\": " << json_string(r.method) << ", \"n\": " << r.n
        << ", \"d\": " << r.d << ", \"compression\": " << json_real(r.compression)
        << ", \"epsilon\": " << (r.epsilon ? json_real(*r.epsilon) : "null")
        << ", \"metric\": " << json_string(r.metric) << ", \"value\": " << json_real(r.value)
        << ", \"stderr\": " << (r.std_error ? json_real(*r.std_error) : "null")
        << ", \"trials\": " << r.trials << ", \"seed\": " << r.seed
        << ", \"wall_time_seconds\": " << json_real(r.wall_time_seconds)
        << ", \"status\": " << json_string(r.status) << "}"
        << (i + 1 < records.size() ? ",\n" : "\n");
  }
  out << "]\n";
}

// One RFC 4180 record; may consume several physical lines.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw ParseError(0, "unterminated quoted CSV field");
  if (any) fields.push_back(std::move(field));
  return any;
}

double parse_real_field(const std::string& s, std::size_t line) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  const auto v = to_real(s);
  if (!v) throw ParseError(line, "malformed number '" + s + "'");
  return *v;
}

std::uint64_t parse_uint_field(const std::string& s, std::size_t line) {
  const auto v = to_uint(s);
  if (!v) throw ParseError(line, "malformed integer '" + s + "'");
  return *v;
}

}  // namespace

void write_report(std::vector<Record> records, ReportFormat format, std::ostream& out) {
  sort_records(records);
  if (format == ReportFormat::Json) {
    write_json(records, out);
  } else {
    const auto& cols = report_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
    out << '\n';
    for (const auto& r : records) {
      const auto fields = record_fields(r);
      for (std::size_t c = 0; c < fields.size(); ++c) out << (c ? "," : "") << csv_field(fields[c]);
      out << '\n';
    }
  }
  out.flush();
  if (!out) throw IoError("write_report: write failure");
}

void write_report(std::vector<Record> records, ReportFormat format,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_report(std::move(records), format, out);
}

std::vector<Record> read_report_csv(std::istream& in) {
  std::vector<std::string> fields;
  if (!read_csv_record(in, fields)) throw ParseError(1, "empty report");
  if (fields != report_columns()) throw ParseError(1, "unexpected report header");

  std::vector<Record> out;
  std::size_t line = 1;
  while (read_csv_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != report_columns().size()) {
      throw ParseError(line, "expected " + std::to_string(report_columns().size()) +
                                 " fields, got " + std::to_string(fields.size()));
    }
    Record r;
    r.experiment = fields[0];
    r.method = fields[1];
    r.n = parse_uint_field(fields[2], line);
    r.d = parse_uint_field(fields[3], line);
    r.compression = parse_real_field(fields[4], line);
    if (!fields[5].empty()) r.epsilon = parse_real_field(fields[5], line);
    r.metric = fields[6];
    r.value = parse_real_field(fields[7], line);
    if (!fields[8].empty()) r.std_error = parse_real_field(fields[8], line);
    r.trials = parse_uint_field(fields[9], line);
    r.seed = parse_uint_field(fields[10], line);
    r.wall_time_seconds = parse_real_field(fields[11], line);
    r.status = fields[12];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ssse
