#include <benchmark/benchmark.h>

#include "pstkit/graph.hpp"
#include "pstkit/spectral.hpp"

namespace {

void BM_EigendecomposeHypercube(benchmark::State& state) {
  const auto g = pst::make_hypercube(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pst::eigendecompose(g));
  state.SetLabel("n=" + std::to_string(g.order()));
}
BENCHMARK(BM_EigendecomposeHypercube)->DenseRange(3, 8);

void BM_SpectralProjectors(benchmark::State& state) {
  const auto d = pst::eigendecompose(pst::make_hypercube(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(pst::spectral_projectors(d));
}
BENCHMARK(BM_SpectralProjectors)->DenseRange(3, 7);

void BM_KernelEvaluation(benchmark::State& state) {
  const auto d = pst::eigendecompose(pst::make_cycle(static_cast<std::size_t>(state.range(0))));
  const pst::TransferKernel k(d, pst::VertexId{0}, pst::VertexId{1});
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(k.at(t));
    t += 1e-3;
  }
}
BENCHMARK(BM_KernelEvaluation)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
