#include "fixtures.hpp"
#include "oracles.hpp"

#include "toricell/resolution.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace toricell;

namespace {

void BM_Consistency(benchmark::State &state) {
  auto t = fixtures::fourfold();
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(superpotential::consistency(t.Q, t.rels, bound).consistent);
}
BENCHMARK(BM_Consistency)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_McKayExactness(benchmark::State &state) {
  auto cx = cells::mckay_complex(fixtures::z6_123());
  auto res = resolution::build_resolution(cx, *cx.explicit_signs);
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(resolution::verify_exactness(res, bound).failures);
}
BENCHMARK(BM_McKayExactness)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_FourfoldExactness(benchmark::State &state) {
  auto t = fixtures::fourfold();
  auto cx = cells::general_complex(t.Q, t.W, t.rels, 4);
  auto res = resolution::build_resolution(cx, *cells::solve_incidence(cx).signs);
  for (auto _ : state)
    benchmark::DoNotOptimize(resolution::verify_exactness(res, 1).failures);
}
BENCHMARK(BM_FourfoldExactness)->Unit(benchmark::kMillisecond);

void BM_IncidenceSolve(benchmark::State &state) {
  auto t = fixtures::fourfold();
  auto cx = cells::general_complex(t.Q, t.W, t.rels, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(cells::solve_incidence(cx).feasible());
}
BENCHMARK(BM_IncidenceSolve)->Unit(benchmark::kMillisecond);

// random ±1 band matrix of the given size
resolution::SparseMatrix band(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  resolution::SparseMatrix m;
  m.rows = m.cols = n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < std::min(n, i + 4); ++j)
      if (rng() % 2)
        m.entries.emplace_back(i, j, rng() % 2 ? 1 : -1);
  return m;
}

void BM_SparseRank(benchmark::State &state) {
  auto m = band(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(resolution::sparse_rank(m));
}
BENCHMARK(BM_SparseRank)->Arg(64)->Arg(256)->Arg(1024);

void BM_DualCone(benchmark::State &state) {
  std::mt19937 rng(11);
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<lattice::IntVector>> cones;
  for (int i = 0; i < 16; ++i)
    cones.push_back(oracles::random_cone(rng, k, 3, 3));
  for (auto _ : state)
    for (const auto &g : cones)
      benchmark::DoNotOptimize(lattice::dual_cone_rays(g, k).rays.size());
}
BENCHMARK(BM_DualCone)->DenseRange(3, 5);

void BM_HilbertBasis(benchmark::State &state) {
  auto X = fixtures::fourfold().X;
  std::vector<lattice::IntVector> rays;
  for (const auto &r : X.rays)
    rays.push_back(lattice::to_int_vector(r));
  auto dual = lattice::dual_cone_rays(rays, X.n);
  for (auto _ : state)
    benchmark::DoNotOptimize(lattice::hilbert_basis(dual.rays, X.n).size());
}
BENCHMARK(BM_HilbertBasis)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
