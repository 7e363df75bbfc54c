#include <benchmark/benchmark.h>

#include "pstkit/cones.hpp"
#include "pstkit/transfer.hpp"

namespace {

void BM_ScanCylindrical(benchmark::State& state) {
  const auto g = pst::cylindrical_cone(pst::make_cycle(3), pst::make_empty(1), pst::make_cycle(3));
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pst::max_fidelity_scan(g, pst::VertexId{0}, pst::VertexId{g.order() - 1}, 200.0, steps, 60));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * steps));
}
BENCHMARK(BM_ScanCylindrical)->Arg(20001)->Arg(200001)->Unit(benchmark::kMillisecond);

void BM_CertificateHypercube(benchmark::State& state) {
  const auto g = pst::make_hypercube(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pst::pst_certificate(g, pst::VertexId{0}, pst::VertexId{g.order() - 1}));
  }
}
BENCHMARK(BM_CertificateHypercube)->DenseRange(3, 7)->Unit(benchmark::kMicrosecond);

void BM_CertificatePath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = pst::make_path(n);
  for (auto _ : state) benchmark::DoNotOptimize(pst::pst_certificate(g, pst::VertexId{0}, pst::VertexId{n - 1}));
}
BENCHMARK(BM_CertificatePath)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

}  // namespace
