#pragma once

#include <cstddef>
#include <vector>

#include "ssse/matrix.hpp"

namespace ssse {

/// Samples (one per row) with class labels remapped to 0..class_count-1.
struct LabeledDataset {
  DenseMatrix features;
  std::vector<int> labels;
  int class_count = 0;
  /// Original label value of each class id, when the data came from a file.
  std::vector<double> label_values;

  std::size_t size() const noexcept { return features.rows(); }
  std::size_t dim() const noexcept { return features.cols(); }
};

}  // namespace ssse
