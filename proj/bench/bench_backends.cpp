#include <benchmark/benchmark.h>

#include "nni/generator.hpp"
#include "nni/gep.hpp"
#include "nni/linearizer.hpp"
#include "nni/pipeline.hpp"

using namespace nni;

// range(0) = taxa, range(1) = threads (1 selects the serial backend).

static void BM_EndnodePaths(benchmark::State& state) {
  Rng rng(11);
  Phylogeny t = random_tree(static_cast<int>(state.range(0)), rng, false);
  RootedView r = orient(t, t.root_handle());
  auto cls = classify_nodes(t);
  for (auto _ : state) {
    par::Runtime rt(static_cast<int>(state.range(1)));
    auto ep = endnode_paths(t, r, cls, rt);
    benchmark::DoNotOptimize(ep.rounds);
  }
}
BENCHMARK(BM_EndnodePaths)->ArgsProduct({{1 << 12, 1 << 15}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond);

static void BM_GoodPairs(benchmark::State& state) {
  auto g = generate_pair({static_cast<int>(state.range(0)), 5, static_cast<int>(state.range(0)) / 4, false});
  for (auto _ : state) {
    par::Runtime rt(static_cast<int>(state.range(1)));
    auto gp = find_good_edge_pairs(g.t1, g.t2, rt);
    benchmark::DoNotOptimize(gp.pairs.size());
  }
}
BENCHMARK(BM_GoodPairs)->ArgsProduct({{1 << 10, 1 << 13}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond);

static void BM_Approx(benchmark::State& state) {
  auto g = generate_independent(static_cast<int>(state.range(0)), 9, false);
  for (auto _ : state) {
    auto r = approx_nni(g.t1, g.t2, static_cast<int>(state.range(1)));
    benchmark::DoNotOptimize(r.cost);
  }
}
BENCHMARK(BM_Approx)->ArgsProduct({{256, 1024}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
