#include <benchmark/benchmark.h>

#include "signcut/signcut.hpp"

namespace {

using namespace signcut;

PlantedGraph planted(Index n, int k) {
  PlantedConfig cfg;
  cfg.n = n;
  cfg.k = k;
  cfg.p_in = 20.0 / static_cast<double>(n / k);
  cfg.p_out = 2.0 / static_cast<double>(n);
  cfg.frac_neg_out = 1.0;
  cfg.p_in = std::min(cfg.p_in, 1.0);
  return generate_planted(cfg);
}

void BM_NormalizedLaplacian(benchmark::State& state) {
  const PlantedGraph pg = planted(state.range(0), 5);
  for (auto _ : state) benchmark::DoNotOptimize(normalized_signed_laplacian(pg.graph));
}
BENCHMARK(BM_NormalizedLaplacian)->Arg(1000)->Arg(10000);

void BM_EigenDense(benchmark::State& state) {
  const SparseMatrix l = normalized_signed_laplacian(planted(state.range(0), 5).graph);
  EigenOptions opts;
  opts.method = EigenMethod::kDense;
  for (auto _ : state) benchmark::DoNotOptimize(smallest_eigenpairs(l, 5, opts));
}
BENCHMARK(BM_EigenDense)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_EigenLanczos(benchmark::State& state) {
  const SparseMatrix l = normalized_signed_laplacian(planted(state.range(0), 5).graph);
  EigenOptions opts;
  opts.method = EigenMethod::kLanczos;
  for (auto _ : state) benchmark::DoNotOptimize(smallest_eigenpairs(l, 5, opts));
}
BENCHMARK(BM_EigenLanczos)->Arg(800)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_Discretize(benchmark::State& state) {
  const RelaxedSolution rs = relaxed_solution(planted(state.range(0), 5).graph, 5);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(discretize(rs, ++seed));
}
BENCHMARK(BM_Discretize)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_HeatKernelMatrix(benchmark::State& state) {
  LexiconConfig cfg;
  cfg.words = state.range(0);
  cfg.antonym_pairs = 10;
  const Lexicon lex = generate_lexicon(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(heat_kernel_matrix(lex.embeddings, 4.0, 0.05));
}
BENCHMARK(BM_HeatKernelMatrix)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
