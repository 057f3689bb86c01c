#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <variant>
#include <vector>

namespace ssse {

/// Row-major m x n matrix of doubles. Holds datasets (one sample per row)
/// and projected outputs.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  /// Zero-filled rows x cols matrix.
  DenseMatrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of `values` (row-major). Throws ShapeError if the size
  /// is not rows*cols, InvalidArgument if any entry is non-finite.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * cols_, cols_}; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool all_finite() const noexcept;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// d x n projection with exactly one nonzero per column, stored by column as
/// (target row, sign). The entry at (target_row[j], j) is scale * sign[j].
class SparseProjection {
 public:
  /// Validates the one-nonzero-per-column invariants; throws InvalidArgument.
  SparseProjection(std::size_t rows, std::vector<std::uint32_t> target_row,
                   std::vector<std::int8_t> sign, double scale = 1.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return target_row_.size(); }
  double scale() const noexcept { return scale_; }

  std::span<const std::uint32_t> target_row() const noexcept { return target_row_; }
  std::span<const std::int8_t> sign() const noexcept { return sign_; }

  friend bool operator==(const SparseProjection&, const SparseProjection&) = default;

 private:
  std::size_t rows_;
  std::vector<std::uint32_t> target_row_;
  std::vector<std::int8_t> sign_;
  double scale_;
};

/// Dense d x n projection. The effective matrix is scale * entries; the
/// scale is kept apart so that ±1 entries stay exact.
class DenseProjection {
 public:
  DenseProjection(std::size_t rows, std::size_t cols, std::vector<double> entries,
                  double scale = 1.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double scale() const noexcept { return scale_; }

  std::span<const double> entries() const noexcept { return entries_; }
  std::span<const double> row(std::size_t t) const { return {entries_.data() + t * cols_, cols_}; }
  double entry(std::size_t t, std::size_t j) const { return entries_[t * cols_ + j]; }

  friend bool operator==(const DenseProjection&, const DenseProjection&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
  double scale_;
};

using Projection = std::variant<SparseProjection, DenseProjection>;

std::size_t projection_rows(const Projection& r);
std::size_t projection_cols(const Projection& r);

/// X * R^T for a one-nonzero-per-column R, in a single sweep over the
/// columns of each sample: each feature is added to or subtracted from its
/// target output feature. O(nnz(X)) work; no multiplies unless scale != 1.
DenseMatrix apply_sparse(const DenseMatrix& x, const SparseProjection& r);

/// Plain X * R^T, times R.scale().
DenseMatrix apply_dense(const DenseMatrix& x, const DenseProjection& r);

DenseMatrix project(const DenseMatrix& x, const Projection& r);

/// R x for a single vector x of length R.cols().
std::vector<double> project_vector(std::span<const double> x, const SparseProjection& r);
std::vector<double> project_vector(std::span<const double> x, const DenseProjection& r);
std::vector<double> project_vector(std::span<const double> x, const Projection& r);

/// Materializes R as a DenseProjection carrying the same scale.
/// apply_dense(X, to_dense(R)) is bit-identical to apply_sparse(X, R).
DenseProjection to_dense(const SparseProjection& r);

double squared_norm(std::span<const double> x) noexcept;

}  // namespace ssse
