#include <benchmark/benchmark.h>

#include "ssse/builders.hpp"
#include "ssse/clustering.hpp"
#include "ssse/data_io.hpp"
#include "ssse/matrix.hpp"

namespace {

using namespace ssse;

DenseMatrix uniform_data(std::size_t m, std::size_t n) {
  return generate_synthetic({SyntheticKind::Uniform01, m, n, {}, 1.0, 42}).features;
}

// Args: rows of X, source dimension n, target dimension d.
void BM_ApplySparseSSse(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto d = static_cast<std::size_t>(state.range(2));
  const auto x = uniform_data(m, n);
  const auto r = build_s_sse({Method::SSse, n, d, 3.0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(apply_sparse(x, r));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m * n));
}
BENCHMARK(BM_ApplySparseSSse)->Args({10000, 1000, 100})->Args({1000, 10000, 500})->Unit(benchmark::kMillisecond);

void BM_ApplySparseSe(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto d = static_cast<std::size_t>(state.range(2));
  const auto x = uniform_data(m, n);
  const auto r = build_se({Method::Se, n, d, 3.0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(apply_sparse(x, r));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m * n));
}
BENCHMARK(BM_ApplySparseSe)->Args({10000, 1000, 100})->Args({1000, 10000, 500})->Unit(benchmark::kMillisecond);

void BM_ApplyDense(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto d = static_cast<std::size_t>(state.range(2));
  const auto x = uniform_data(m, n);
  const auto r = build_de({Method::De, n, d, 3.0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(apply_dense(x, r));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m * n));
}
BENCHMARK(BM_ApplyDense)->Args({2000, 1000, 100})->Unit(benchmark::kMillisecond);

void BM_BuildSSse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_s_sse({Method::SSse, n, n / 10, 3.0, seed++}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildSSse)->Range(1 << 10, 1 << 20);

void BM_BuildSe(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_se({Method::Se, n, n / 10, 3.0, seed++}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildSe)->Range(1 << 10, 1 << 20);

void BM_KMeans(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data =
      generate_synthetic({SyntheticKind::GaussianClasses, 3000, n, {0, 1, 2}, 1.0, 7}).features;
  for (auto _ : state) benchmark::DoNotOptimize(kmeans(data, {3, 5, 100, 1e-6, 1}).cost);
}
BENCHMARK(BM_KMeans)->Arg(18)->Arg(180)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
