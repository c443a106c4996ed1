#include <benchmark/benchmark.h>

#include "percolab/coupling.hpp"
#include "percolab/exact.hpp"
#include "percolab/exploration.hpp"
#include "percolab/graph.hpp"
#include "percolab/percolation.hpp"
#include "percolab/union_find.hpp"

namespace {

using namespace percolab;

void bm_sample_clusters(benchmark::State& state) {
  graph g = gen_complete(static_cast<int32_t>(state.range(0)));
  double p = 1.5 / g.num_vertices;
  uint64_t replica = 0;
  for (auto _ : state) {
    configuration c = sample(g, p, 7, replica++);
    cluster_report rep = clusters(g, c);
    benchmark::DoNotOptimize(rep.density_k1);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * g.num_edges());
}
BENCHMARK(bm_sample_clusters)->Arg(200)->Arg(500)->Arg(1000);

void bm_replica_densities(benchmark::State& state) {
  graph g = gen_complete(static_cast<int32_t>(state.range(0)));
  double p = 1.5 / g.num_vertices;
  uint64_t replica = 0;
  double k1, k2, ko;
  for (auto _ : state) {
    replica_densities(g, p, 7, replica++, k1, k2, ko);
    benchmark::DoNotOptimize(k1);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * g.num_edges());
}
BENCHMARK(bm_replica_densities)->Arg(200)->Arg(500)->Arg(1000);

void bm_union_find(benchmark::State& state) {
  int32_t n = static_cast<int32_t>(state.range(0));
  union_find uf(n);
  uint64_t x = 88172645463325252ull;
  for (auto _ : state) {
    uf.reset();
    for (int32_t i = 0; i < n; ++i) {
      x ^= x << 13;
      x ^= x >> 7;
      x ^= x << 17;
      uf.unite(static_cast<int32_t>(x % n), static_cast<int32_t>((x >> 32) % n));
    }
    benchmark::DoNotOptimize(uf.component_size(0));
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * n);
}
BENCHMARK(bm_union_find)->Arg(1000)->Arg(100000);

void bm_exact_theta(benchmark::State& state) {
  graph g = gen_hypercube(3);  // 12 edges -> 4096 configurations
  for (auto _ : state) {
    double t = exact_theta(g, 0.5);
    benchmark::DoNotOptimize(t);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) << g.num_edges());
}
BENCHMARK(bm_exact_theta);

void bm_exploration_tree_build(benchmark::State& state) {
  graph g = gen_complete(5);
  for (auto _ : state) {
    exploration_tree tree(g, 0.5, 0.5, 0);
    benchmark::DoNotOptimize(tree.size());
  }
}
BENCHMARK(bm_exploration_tree_build);

void bm_coupled_run(benchmark::State& state) {
  graph g = gen_complete(5);
  coupling_session sess(g, 0.5, 0.5, 0);
  uint64_t replica = 0;
  for (auto _ : state) {
    coupling_outcome out = sess.run(7, replica++);
    benchmark::DoNotOptimize(out.monotone_ok);
  }
}
BENCHMARK(bm_coupled_run);

void bm_explore(benchmark::State& state) {
  graph g = gen_hypercube(static_cast<int32_t>(state.range(0)));
  configuration c = sample(g, 0.5, 7, 0);
  for (auto _ : state) {
    exploration_trace tr = explore(g, c, 0);
    benchmark::DoNotOptimize(tr.tau_moat);
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * g.num_edges());
}
BENCHMARK(bm_explore)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
