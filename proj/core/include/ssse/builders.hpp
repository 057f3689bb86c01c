#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "ssse/matrix.hpp"

namespace ssse {

enum class Method {
  SSse,              ///< stable sparse subspace embedding (balanced rows)
  Se,                ///< sparse embedding / count-sketch (rows with replacement)
  De,                ///< dense ±1 embedding, scaled by 1/sqrt(d)
  AchlioptasSparse,  ///< ±sqrt(kappa) w.p. 1/(2 kappa) each, else 0; scaled by 1/sqrt(d)
};

/// "s-sse", "se", "de", "achlioptas".
std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// Whether the method produces a SparseProjection (one nonzero per column).
constexpr bool is_column_sparse(Method m) noexcept {
  return m == Method::SSse || m == Method::Se;
}

struct BuilderSpec {
  Method method = Method::SSse;
  std::size_t n = 0;  ///< source dimension
  std::size_t d = 0;  ///< target dimension
  double kappa = 3.0;  ///< AchlioptasSparse only
  std::uint64_t seed = 0;
};

// Streams: every builder draws positions from derive_seed(seed, 0) and
// signs / entries from derive_seed(seed, 1).

/// Row labels form the balanced multiset in which q = n mod d rows occur
/// floor(n/d)+1 times and the others floor(n/d) times; the q rows are a
/// uniform q-subset and the label sequence is a uniform permutation of the
/// multiset. Signs are fair and independent. Requires 1 <= d <= n.
SparseProjection build_s_sse(const BuilderSpec& spec);

/// Each column's row drawn independently and uniformly from [0, d).
SparseProjection build_se(const BuilderSpec& spec);

/// Independent fair ±1 entries, scale 1/sqrt(d).
DenseProjection build_de(const BuilderSpec& spec);

/// Entries +sqrt(kappa) / -sqrt(kappa) with probability 1/(2 kappa) each,
/// 0 otherwise; scale 1/sqrt(d). Requires kappa >= 3.
DenseProjection build_achlioptas_sparse(const BuilderSpec& spec);

/// Dispatches on spec.method.
Projection build(const BuilderSpec& spec);

}  // namespace ssse
