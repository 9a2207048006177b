#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "koopnet/affine_wavelet.hpp"
#include "koopnet/repr_analysis.hpp"
#include "koopnet/ridgelet.hpp"

using namespace koopnet;

namespace {

KoopmanRep regular_rep(FiniteGroup G) {
  auto g = std::make_shared<const FiniteGroup>(std::move(G));
  return KoopmanRep(std::make_shared<const GAction>(regular_action(g)),
                    std::make_shared<const InvariantMeasure>(counting_measure(g->order())));
}

void BM_CommutantCyclic(benchmark::State& state) {
  const KoopmanRep rep = regular_rep(build_cyclic(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(compute_commutant(rep).dimension);
}
BENCHMARK(BM_CommutantCyclic)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_DecomposeSymmetric(benchmark::State& state) {
  const KoopmanRep rep = regular_rep(build_symmetric(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(decompose_invariant(rep, 0).size());
}
BENCHMARK(BM_DecomposeSymmetric)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RidgeletRoundTrip(benchmark::State& state) {
  const KoopmanRep rep = regular_rep(build_symmetric(static_cast<std::size_t>(state.range(0))));
  std::mt19937_64 rng(0);
  const FieldFunction psi = random_function(rep.space_measure(), rng);
  const FieldFunction f = random_function(rep.space_measure(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(dnn_apply(rep, psi, ridgelet_transform(rep, psi, f)).values().data());
}
BENCHMARK(BM_RidgeletRoundTrip)->Arg(4)->Arg(5);

void BM_WaveletTransform(benchmark::State& state) {
  const affine::AffineGrid grid{affine::GridSpec{}};
  const auto psi = affine::mexican_hat(grid);
  const auto f = affine::gaussian(grid);
  for (auto _ : state) benchmark::DoNotOptimize(affine::wavelet_transform(grid, psi, f).data());
}
BENCHMARK(BM_WaveletTransform)->Unit(benchmark::kMillisecond);

void BM_AdmissibilityAffine(benchmark::State& state) {
  const affine::AffineGrid grid{affine::GridSpec{}};
  const auto psi = affine::mexican_hat(grid);
  for (auto _ : state) benchmark::DoNotOptimize(affine::admissibility_affine(psi).c_psi);
}
BENCHMARK(BM_AdmissibilityAffine);

}  // namespace

BENCHMARK_MAIN();
