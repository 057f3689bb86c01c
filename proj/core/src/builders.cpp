#include "ssse/builders.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ssse/errors.hpp"
#include "ssse/rng.hpp"

namespace ssse {

namespace {

constexpr std::uint64_t kPositionStream = 0;
constexpr std::uint64_t kSignStream = 1;

void require_method(const BuilderSpec& spec, Method expected, const char* who) {
  if (spec.method != expected) {
    throw InvalidArgument(std::string(who) + ": spec.method is " +
                          std::string(method_name(spec.method)));
  }
}

void require_dims(const BuilderSpec& spec, const char* who) {
  if (spec.n == 0 || spec.d == 0) {
    throw InvalidArgument(std::string(who) + ": n and d must be positive");
  }
  if (spec.d > UINT32_MAX) throw InvalidArgument(std::string(who) + ": d too large");
}

std::vector<std::int8_t> draw_signs(std::size_t n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kSignStream));
  std::vector<std::int8_t> sign(n);
  for (auto& s : sign) s = static_cast<std::int8_t>(rng.sign());
  return sign;
}

}  // namespace

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::SSse: return "s-sse";
    case Method::Se: return "se";
    case Method::De: return "de";
    case Method::AchlioptasSparse: return "achlioptas";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  if (name == "s-sse" || name == "ssse") return Method::SSse;
  if (name == "se") return Method::Se;
  if (name == "de") return Method::De;
  if (name == "achlioptas") return Method::AchlioptasSparse;
  return std::nullopt;
}

SparseProjection build_s_sse(const BuilderSpec& spec) {
  require_method(spec, Method::SSse, "build_s_sse");
  require_dims(spec, "build_s_sse");
  if (spec.d > spec.n) {
    throw InvalidArgument("build_s_sse: d (" + std::to_string(spec.d) + ") exceeds n (" +
                          std::to_string(spec.n) + ")");
  }
  const std::size_t n = spec.n;
  const std::size_t d = spec.d;
  const std::size_t r = n / d;
  const std::size_t q = n % d;

  Rng rng(derive_seed(spec.seed, kPositionStream));

  // Rows [0, q) of `order` get r+1 labels; picking them with a partial
  // Fisher-Yates pass makes the q-subset uniform.
  std::vector<std::uint32_t> order(d);
  std::iota(order.begin(), order.end(), 0U);
  for (std::size_t i = 0; i < q; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(d - i));
    std::swap(order[i], order[j]);
  }

  std::vector<std::uint32_t> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t copies = i < q ? r + 1 : r;
    labels.insert(labels.end(), copies, order[i]);
  }
  shuffle(std::span<std::uint32_t>(labels), rng);

  return SparseProjection(d, std::move(labels), draw_signs(n, spec.seed), 1.0);
}

SparseProjection build_se(const BuilderSpec& spec) {
  require_method(spec, Method::Se, "build_se");
  require_dims(spec, "build_se");
  Rng rng(derive_seed(spec.seed, kPositionStream));
  std::vector<std::uint32_t> labels(spec.n);
  for (auto& t : labels) t = static_cast<std::uint32_t>(rng.below(spec.d));
  return SparseProjection(spec.d, std::move(labels), draw_signs(spec.n, spec.seed), 1.0);
}

DenseProjection build_de(const BuilderSpec& spec) {
  require_method(spec, Method::De, "build_de");
  require_dims(spec, "build_de");
  Rng rng(derive_seed(spec.seed, kSignStream));
  std::vector<double> entries(spec.d * spec.n);
  for (auto& e : entries) e = rng.coin() ? 1.0 : -1.0;
  return DenseProjection(spec.d, spec.n, std::move(entries),
                         1.0 / std::sqrt(static_cast<double>(spec.d)));
}

DenseProjection build_achlioptas_sparse(const BuilderSpec& spec) {
  require_method(spec, Method::AchlioptasSparse, "build_achlioptas_sparse");
  require_dims(spec, "build_achlioptas_sparse");
  if (!(spec.kappa >= 3.0) || !std::isfinite(spec.kappa)) {
    throw InvalidArgument("build_achlioptas_sparse: kappa must be >= 3");
  }
  Rng rng(derive_seed(spec.seed, kSignStream));
  const double magnitude = std::sqrt(spec.kappa);
  const double half = 1.0 / (2.0 * spec.kappa);
  std::vector<double> entries(spec.d * spec.n);
  for (auto& e : entries) {
    const double u = rng.uniform01();
    e = u < half ? magnitude : (u < 2.0 * half ? -magnitude : 0.0);
  }
  return DenseProjection(spec.d, spec.n, std::move(entries),
                         1.0 / std::sqrt(static_cast<double>(spec.d)));
}

Projection build(const BuilderSpec& spec) {
  switch (spec.method) {
    case Method::SSse: return build_s_sse(spec);
    case Method::Se: return build_se(spec);
    case Method::De: return build_de(spec);
    case Method::AchlioptasSparse: return build_achlioptas_sparse(spec);
  }
  throw InvalidArgument("build: unknown method");
}

}  // namespace ssse
