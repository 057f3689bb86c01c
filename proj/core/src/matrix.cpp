#include "ssse/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "ssse/errors.hpp"

namespace ssse {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void require_finite_output(const DenseMatrix& out) {
  // A non-finite input entry always propagates to the output entry it is
  // summed into, so scanning the (smaller) output is sufficient.
  if (!out.all_finite()) {
    throw InvalidArgument("projection input contains non-finite values");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw ShapeError("DenseMatrix: " + std::to_string(values_.size()) +
                     " values for shape " + shape_str(rows, cols));
  }
  if (!all_finite()) throw InvalidArgument("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  std::vector<double> values;
  values.reserve(m * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw ShapeError("DenseMatrix::from_rows: ragged rows");
    values.insert(values.end(), r.begin(), r.end());
  }
  return DenseMatrix(m, n, std::move(values));
}

bool DenseMatrix::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

SparseProjection::SparseProjection(std::size_t rows, std::vector<std::uint32_t> target_row,
                                   std::vector<std::int8_t> sign, double scale)
    : rows_(rows), target_row_(std::move(target_row)), sign_(std::move(sign)), scale_(scale) {
  if (rows_ == 0) throw InvalidArgument("SparseProjection: zero rows");
  if (target_row_.empty()) throw InvalidArgument("SparseProjection: zero columns");
  if (sign_.size() != target_row_.size()) {
    throw InvalidArgument("SparseProjection: target_row and sign lengths differ");
  }
  for (auto t : target_row_) {
    if (t >= rows_) throw InvalidArgument("SparseProjection: target row out of range");
  }
  for (auto s : sign_) {
    if (s != 1 && s != -1) throw InvalidArgument("SparseProjection: sign must be +1 or -1");
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw InvalidArgument("SparseProjection: scale must be positive and finite");
  }
}

DenseProjection::DenseProjection(std::size_t rows, std::size_t cols, std::vector<double> entries,
                                 double scale)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), scale_(scale) {
  if (rows_ == 0 || cols_ == 0) throw InvalidArgument("DenseProjection: zero dimension");
  if (entries_.size() != rows_ * cols_) {
    throw ShapeError("DenseProjection: " + std::to_string(entries_.size()) +
                     " entries for shape " + shape_str(rows_, cols_));
  }
  if (!std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); })) {
    throw InvalidArgument("DenseProjection: non-finite entry");
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw InvalidArgument("DenseProjection: scale must be positive and finite");
  }
}

std::size_t projection_rows(const Projection& r) {
  return std::visit([](const auto& p) { return p.rows(); }, r);
}

std::size_t projection_cols(const Projection& r) {
  return std::visit([](const auto& p) { return p.cols(); }, r);
}

DenseMatrix apply_sparse(const DenseMatrix& x, const SparseProjection& r) {
  if (x.cols() != r.cols()) {
    throw ShapeError("apply_sparse: X is " + shape_str(x.rows(), x.cols()) + ", R is " +
                     shape_str(r.rows(), r.cols()));
  }
  const std::size_t n = r.cols();
  const std::size_t d = r.rows();
  const auto target = r.target_row();

  // Negation by flipping the IEEE sign bit keeps the inner loop add-only.
  std::vector<std::uint64_t> flip(n);
  for (std::size_t j = 0; j < n; ++j) {
    flip[j] = r.sign()[j] < 0 ? 0x8000000000000000ULL : 0;
  }

  DenseMatrix out(x.rows(), d);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double* in = x.row(i).data();
    double* acc = out.row(i).data();
    for (std::size_t j = 0; j < n; ++j) {
      acc[target[j]] += std::bit_cast<double>(std::bit_cast<std::uint64_t>(in[j]) ^ flip[j]);
    }
  }
  if (r.scale() != 1.0) {
    for (double& v : out.values()) v *= r.scale();
  }
  require_finite_output(out);
  return out;
}

DenseMatrix apply_dense(const DenseMatrix& x, const DenseProjection& r) {
  if (x.cols() != r.cols()) {
    throw ShapeError("apply_dense: X is " + shape_str(x.rows(), x.cols()) + ", R is " +
                     shape_str(r.rows(), r.cols()));
  }
  const std::size_t n = r.cols();
  const std::size_t d = r.rows();
  DenseMatrix out(x.rows(), d);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double* in = x.row(i).data();
    for (std::size_t t = 0; t < d; ++t) {
      const double* rt = r.row(t).data();
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += rt[j] * in[j];
      out(i, t) = acc;
    }
  }
  if (r.scale() != 1.0) {
    for (double& v : out.values()) v *= r.scale();
  }
  require_finite_output(out);
  return out;
}

DenseMatrix project(const DenseMatrix& x, const Projection& r) {
  return std::visit(
      [&](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, SparseProjection>) {
          return apply_sparse(x, p);
        } else {
          return apply_dense(x, p);
        }
      },
      r);
}

namespace {

DenseMatrix as_row(std::span<const double> x) {
  return DenseMatrix(1, x.size(), std::vector<double>(x.begin(), x.end()));
}

}  // namespace

std::vector<double> project_vector(std::span<const double> x, const SparseProjection& r) {
  if (x.size() != r.cols()) throw ShapeError("project_vector: length mismatch");
  std::vector<double> out(r.rows(), 0.0);
  const auto target = r.target_row();
  const auto sign = r.sign();
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[target[j]] += sign[j] < 0 ? -x[j] : x[j];
  }
  if (r.scale() != 1.0) {
    for (double& v : out) v *= r.scale();
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw InvalidArgument("project_vector: non-finite input");
  }
  return out;
}

std::vector<double> project_vector(std::span<const double> x, const DenseProjection& r) {
  auto out = apply_dense(as_row(x), r);
  auto v = out.values();
  return {v.begin(), v.end()};
}

std::vector<double> project_vector(std::span<const double> x, const Projection& r) {
  return std::visit([&](const auto& p) { return project_vector(x, p); }, r);
}

DenseProjection to_dense(const SparseProjection& r) {
  std::vector<double> entries(r.rows() * r.cols(), 0.0);
  for (std::size_t j = 0; j < r.cols(); ++j) {
    entries[r.target_row()[j] * r.cols() + j] = static_cast<double>(r.sign()[j]);
  }
  return DenseProjection(r.rows(), r.cols(), std::move(entries), r.scale());
}

double squared_norm(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace ssse
