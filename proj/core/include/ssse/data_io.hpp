#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssse/dataset.hpp"

namespace ssse {

// ---------------------------------------------------------------------------
// LIBSVM text format
// ---------------------------------------------------------------------------

/// Reads "label idx:val idx:val ..." lines (1-based, strictly ascending
/// indices) into a dense dataset. The width is the largest index seen unless
/// `n_features` is given, in which case larger indices are an error. Labels
/// are remapped to 0..c-1 in ascending order of their original values.
/// Blank lines are skipped. Throws ParseError carrying the line number.
LabeledDataset parse_libsvm(std::istream& in, std::optional<std::size_t> n_features = {});
LabeledDataset load_libsvm(const std::filesystem::path& path,
                           std::optional<std::size_t> n_features = {});

/// Writes nonzero entries with 17 significant digits. The last feature of
/// the first sample is always written (possibly as 0) so the width survives
/// a round trip. Labels are written as their original values when known.
void write_libsvm(std::ostream& out, const LabeledDataset& data);
void save_libsvm(const std::filesystem::path& path, const LabeledDataset& data);

/// Rescales every feature to [0, 1] in place; constant features become 0.
void minmax_scale(DenseMatrix& features);

// ---------------------------------------------------------------------------
// Synthetic data
// ---------------------------------------------------------------------------

enum class SyntheticKind { Uniform01, StdNormal, GaussianClasses };

std::string_view synthetic_kind_name(SyntheticKind k) noexcept;
std::optional<SyntheticKind> parse_synthetic_kind(std::string_view name) noexcept;

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::Uniform01;
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> class_means;  ///< GaussianClasses only
  double class_variance = 1.0;      ///< GaussianClasses only
  std::uint64_t seed = 0;
};

/// Row i is drawn from its own stream derive_seed(seed, i). Gaussian classes
/// are laid out in contiguous blocks; the first m mod c classes get one
/// extra sample. Uniform and normal data carry a single class 0.
LabeledDataset generate_synthetic(const SyntheticSpec& spec);

// ---------------------------------------------------------------------------
// Experiment reports
// ---------------------------------------------------------------------------

struct Record {
  std::string experiment;
  std::string method;
  std::size_t n = 0;
  std::size_t d = 0;
  double compression = 0.0;  ///< d / n
  std::optional<double> epsilon;
  std::string metric;
  double value = 0.0;
  std::optional<double> std_error;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double wall_time_seconds = 0.0;
  std::string status = "ok";

  friend bool operator==(const Record&, const Record&) = default;
};

enum class ReportFormat { Csv, Json };

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept;

/// Column order of both report formats.
const std::vector<std::string>& report_columns();

/// Stable sort by (method, d, epsilon); records without epsilon first.
void sort_records(std::vector<Record>& records);

/// CSV: header row plus one row per record, RFC 4180 quoting. JSON: array of
/// flat objects. Reals use 17 significant digits; absent optionals are empty
/// (CSV) or null (JSON). Records are sorted with sort_records first.
void write_report(std::vector<Record> records, ReportFormat format, std::ostream& out);
void write_report(std::vector<Record> records, ReportFormat format,
                  const std::filesystem::path& path);

/// Reads a CSV report produced by write_report.
std::vector<Record> read_report_csv(std::istream& in);

/// Formats a real with 17 significant digits ("nan"/"inf" for non-finite).
std::string format_real(double v);

}  // namespace ssse
