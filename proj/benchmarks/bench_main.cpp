#include <benchmark/benchmark.h>

#include "awfs/corpus.hpp"
#include "awfs/hom_search.hpp"
#include "awfs/lifting.hpp"
#include "awfs/small_object.hpp"

using namespace awfs;

namespace {

void BM_FreeComplexGenerator(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  auto f = SimplicialMap::inclusion(boundary_complex(k), standard_simplex(k));
  for (auto _ : state) {
    auto fr = free_complex(f);
    benchmark::DoNotOptimize(fr.kf.cell_count());
  }
}
BENCHMARK(BM_FreeComplexGenerator)->DenseRange(0, 3);

void BM_FreeComplexCorpus(benchmark::State& state) {
  corpus::Rng rng(7);
  std::vector<SimplicialMap> maps;
  for (int i = 0; i < 32; ++i) maps.push_back(corpus::random_arrow(rng, static_cast<int>(state.range(0))));
  for (auto _ : state) {
    for (const auto& f : maps) benchmark::DoNotOptimize(free_complex(f).kf.height());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(maps.size()));
}
BENCHMARK(BM_FreeComplexCorpus)->DenseRange(1, 3);

void BM_LawSuite(benchmark::State& state) {
  auto fixtures = corpus::fixtures();
  const auto& f = fixtures[static_cast<std::size_t>(state.range(0))].map;
  state.SetLabel(fixtures[static_cast<std::size_t>(state.range(0))].name);
  for (auto _ : state) benchmark::DoNotOptimize(check_awfs_laws(f).all_passed());
}
BENCHMARK(BM_LawSuite)->DenseRange(0, 4);

void BM_HomSearch(benchmark::State& state) {
  corpus::Rng rng(11);
  auto x = corpus::random_complex(rng, {2, 3, 6, static_cast<int>(state.range(0))});
  const auto shape = boundary_complex(2);
  std::size_t found = 0;
  for (auto _ : state) {
    found = enumerate_homs(shape, x).size();
    benchmark::DoNotOptimize(found);
  }
  state.counters["maps"] = static_cast<double>(found);
}
BENCHMARK(BM_HomSearch)->RangeMultiplier(2)->Range(2, 16);

void BM_SolveLifting(benchmark::State& state) {
  corpus::Rng rng(13);
  corpus::CellShape shape;
  shape.max_cells = static_cast<int>(state.range(0));
  auto c = corpus::random_cell_complex(rng, shape);
  auto u = u_of_complex(c);
  auto fr = free_complex(u);
  auto table = free_fillers(fr);
  ArrowSquare sq{u_of_complex(fr.kf), SimplicialMap::identity(c.body()), u, fr.ef};
  for (auto _ : state) benchmark::DoNotOptimize(solve_lifting(c, table, sq));
}
BENCHMARK(BM_SolveLifting)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
BENCHMARK_MAIN();
