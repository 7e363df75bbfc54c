#include <benchmark/benchmark.h>

#include "pstkit/products.hpp"
#include "pstkit/spectral.hpp"

namespace {

void BM_WeakProductFull(benchmark::State& state) {
  const auto g = pst::make_hypercube(static_cast<std::size_t>(state.range(0)));
  const auto h = pst::make_complete(4);
  for (auto _ : state) {
    const auto d = pst::eigendecompose(pst::weak(g, h));
    benchmark::DoNotOptimize(pst::fidelity(d, pst::VertexId{0}, pst::VertexId{4}, 1.0));
  }
}
BENCHMARK(BM_WeakProductFull)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

// Same amplitude from the factor spectra only.
void BM_WeakProductFactored(benchmark::State& state) {
  const auto dg = pst::eigendecompose(pst::make_hypercube(static_cast<std::size_t>(state.range(0))));
  const auto dh = pst::eigendecompose(pst::make_complete(4));
  const pst::VertexId z{0}, one{1};
  for (auto _ : state) benchmark::DoNotOptimize(pst::weak_fidelity(dg, dh, z, z, one, z, 1.0));
}
BENCHMARK(BM_WeakProductFactored)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_GeneralizedLexicographic(benchmark::State& state) {
  const auto g = pst::make_hypercube(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = pst::make_complete(n);
  const auto h = pst::make_cycle(n);
  for (auto _ : state) benchmark::DoNotOptimize(pst::generalized_lexicographic(g, c, h));
}
BENCHMARK(BM_GeneralizedLexicographic)->Arg(8)->Arg(32)->Arg(128);

}  // namespace
