#include <benchmark/benchmark.h>

#include <random>

#include "cflr/bool_mat.hpp"
#include "cflr/forest.hpp"
#include "cflr/generators.hpp"
#include "cflr/solver.hpp"

namespace {

cflr::BoolMat random_mat(std::mt19937_64& rng, cflr::Index n, std::size_t nnz,
                         cflr::Layout layout) {
  std::vector<cflr::Coord> coords;
  for (std::size_t k = 0; k < nnz; ++k) coords.push_back({rng() % n, rng() % n});
  return cflr::BoolMat::from_coords(n, n, std::move(coords), layout);
}

void BM_SpgemmRowByRow(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<cflr::Index>(state.range(0));
  const auto a = random_mat(rng, n, n * 4, cflr::Layout::kRowMajor);
  const auto b = random_mat(rng, n, n * 4, cflr::Layout::kRowMajor);
  for (auto _ : state)
    benchmark::DoNotOptimize(cflr::spgemm(a, b, cflr::Orientation::kRowByRow));
}
BENCHMARK(BM_SpgemmRowByRow)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

// A few delta entries against a large matrix, driven from either side.
void BM_DeltaTimesMatrix(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const cflr::Index n = 1 << 14;
  const bool dual = state.range(0) != 0;
  const auto layout = dual ? cflr::Layout::kColMajor : cflr::Layout::kRowMajor;
  const auto m = random_mat(rng, n, n * 8, layout);
  const auto d = random_mat(rng, n, 16, layout);
  const std::vector<cflr::BoolMat> elems{m};
  for (auto _ : state)
    benchmark::DoNotOptimize(cflr::multiply_with_forest(d, elems, n, n,
                                                        cflr::DeltaSide::kDeltaRight, dual));
}
BENCHMARK(BM_DeltaTimesMatrix)->Arg(0)->Arg(1);

void BM_ForestInsert(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const cflr::Index n = 1 << 12;
  std::vector<cflr::BoolMat> deltas;
  for (int k = 0; k < 200; ++k) deltas.push_back(random_mat(rng, n, 64, cflr::Layout::kRowMajor));
  const bool lazy = state.range(0) != 0;
  for (auto _ : state) {
    if (lazy) {
      cflr::MatrixForest f(n, n);
      for (const auto& d : deltas) f.insert(d);
      benchmark::DoNotOptimize(f.size());
    } else {
      cflr::BoolMat m(n, n);
      for (const auto& d : deltas) m = cflr::union_of(m, d);
      benchmark::DoNotOptimize(m.nnz());
    }
  }
}
BENCHMARK(BM_ForestInsert)->Arg(0)->Arg(1);

void BM_SolveChain(benchmark::State& state, const char* variant) {
  const auto g = cflr::to_wcnf(cflr::preset("dyck"));
  const auto graph = cflr::chain_graph(static_cast<std::size_t>(state.range(0)));
  const auto flags = cflr::variant_flags(variant);
  for (auto _ : state) benchmark::DoNotOptimize(cflr::solve(graph, g, flags).iterations);
}
BENCHMARK_CAPTURE(BM_SolveChain, ma, "ma")->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveChain, ma1, "ma1")->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveChain, ma1234, "ma1234")->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SolveIndexed(benchmark::State& state, const char* variant) {
  const auto g = cflr::to_wcnf(cflr::preset("fsjpt-opt"));
  const auto graph = cflr::random_graph(g, 7, {400, 1600, 16});
  const auto flags = cflr::variant_flags(variant);
  for (auto _ : state) benchmark::DoNotOptimize(cflr::solve(graph, g, flags).iterations);
}
BENCHMARK_CAPTURE(BM_SolveIndexed, ma1, "ma1")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveIndexed, ma14, "ma14")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SolveIndexed, ma1234, "ma1234")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
