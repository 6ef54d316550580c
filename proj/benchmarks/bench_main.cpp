#include <benchmark/benchmark.h>

#include "qae/cloning.hpp"
#include "qae/rng.hpp"
#include "qae/universal.hpp"

namespace {

using namespace qae;

void BM_Enumerate(benchmark::State& state) {
  Budget b{int(state.range(0)), 100000};
  for (auto _ : state) {
    EnumerationSnapshot snap = enumerate_programs(2, b);
    benchmark::DoNotOptimize(snap.entries.size());
  }
}
BENCHMARK(BM_Enumerate)->Arg(10)->Arg(12)->Arg(14)->Arg(16);

void BM_Eigensolve(benchmark::State& state) {
  std::size_t n = std::size_t(state.range(0));
  Rng rng(7);
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.complex_normal();
  ComplexMatrix h = a * a.adjoint();
  for (auto _ : state) {
    HermitianOperator op(h);
    benchmark::DoNotOptimize(op.eig().values.front());
  }
}
BENCHMARK(BM_Eigensolve)->Arg(4)->Arg(16)->Arg(64);

void BM_BuildMu(benchmark::State& state) {
  EnumerationSnapshot snap =
      enumerate_programs(2, Budget{int(state.range(0)), 100000});
  for (auto _ : state) {
    UniversalApprox ua = build_mu(snap, Dyadic::pow2(-10));
    benchmark::DoNotOptimize(ua.mu.trace_real());
  }
}
BENCHMARK(BM_BuildMu)->Arg(10)->Arg(12);

void BM_SymmetricProjector(benchmark::State& state) {
  for (auto _ : state) {
    SymmetricSubspace s =
        symmetric_projector(std::size_t(state.range(0)), 2);
    benchmark::DoNotOptimize(s.dim);
  }
}
BENCHMARK(BM_SymmetricProjector)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
