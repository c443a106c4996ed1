#include "percolab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "percolab/error.hpp"
#include "percolab/rng.hpp"
#include "percolab/union_find.hpp"

namespace percolab {

static double clamp01(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

configuration sample(const graph& g, double p, uint64_t seed, uint64_t replica) {
  p = clamp01(p);
  configuration c;
  c.graph_id = g.hash;
  c.open_edges.resize(g.num_edges());
  rng::replica_stream stream(seed, replica);
  for (int32_t e = 0; e < g.num_edges(); ++e)
    c.open_edges[e] = stream.uniform(static_cast<uint64_t>(e)) < p ? 1 : 0;
  return c;
}

// Shared component labeling: cluster ranks sorted by (size desc, min vertex asc).
static cluster_report report_from_uf(const graph& g, union_find& uf) {
  int32_t n = g.num_vertices;
  cluster_report r;
  // First pass in ascending vertex order: roots appear at their component's
  // minimum vertex, which gives the deterministic tie-break for free.
  std::vector<int32_t> root_min_vertex;  // min vertex per discovered root
  std::vector<int32_t> root_rank(n, -1);
  std::vector<int32_t> sizes;
  for (int32_t v = 0; v < n; ++v) {
    int32_t root = uf.find(v);
    if (root_rank[root] < 0) {
      root_rank[root] = static_cast<int32_t>(sizes.size());
      root_min_vertex.push_back(v);
      sizes.push_back(uf.component_size(root));
    }
  }
  // Order clusters by size descending, min-vertex ascending.
  std::vector<int32_t> order(sizes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int32_t>(i);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    return root_min_vertex[a] < root_min_vertex[b];
  });
  std::vector<int32_t> rank_of(sizes.size());
  r.cluster_sizes.resize(sizes.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    rank_of[order[pos]] = static_cast<int32_t>(pos);
    r.cluster_sizes[pos] = sizes[order[pos]];
  }
  r.cluster_of.resize(n);
  for (int32_t v = 0; v < n; ++v) r.cluster_of[v] = rank_of[root_rank[uf.find(v)]];
  r.density_k1 = static_cast<double>(r.cluster_sizes[0]) / n;
  r.density_k2 = r.cluster_sizes.size() > 1 ? static_cast<double>(r.cluster_sizes[1]) / n : 0.0;
  r.density_o = static_cast<double>(r.cluster_sizes[r.cluster_of[0]]) / n;
  return r;
}

cluster_report clusters(const graph& g, const configuration& c) {
  require(c.graph_id == g.hash &&
              static_cast<int32_t>(c.open_edges.size()) == g.num_edges(),
          errc::invalid_argument, "configuration does not belong to this graph");
  union_find uf(g.num_vertices);
  for (int32_t e = 0; e < g.num_edges(); ++e)
    if (c.open_edges[e]) uf.unite(g.edges[e].first, g.edges[e].second);
  return report_from_uf(g, uf);
}

bool is_pivotal(const graph& g, const configuration& c, int32_t e, int32_t o, double alpha) {
  require(c.graph_id == g.hash &&
              static_cast<int32_t>(c.open_edges.size()) == g.num_edges(),
          errc::invalid_argument, "configuration does not belong to this graph");
  require(e >= 0 && e < g.num_edges(), errc::invalid_index, "edge index out of range");
  require(o >= 0 && o < g.num_vertices, errc::invalid_index, "vertex index out of range");
  int32_t n = g.num_vertices;
  union_find without(n);
  for (int32_t i = 0; i < g.num_edges(); ++i)
    if (i != e && c.open_edges[i]) without.unite(g.edges[i].first, g.edges[i].second);
  double ko_without = static_cast<double>(without.component_size(o)) / n;
  if (!(ko_without < alpha)) return false;
  without.unite(g.edges[e].first, g.edges[e].second);  // now omega ∪ {e}
  double ko_with = static_cast<double>(without.component_size(o)) / n;
  return ko_with >= alpha;
}

void replica_densities(const graph& g, double p, uint64_t seed, uint64_t replica,
                       double& k1, double& k2, double& ko) {
  p = clamp01(p);
  int32_t n = g.num_vertices;
  union_find uf(n);
  rng::replica_stream stream(seed, replica);
  for (int32_t e = 0; e < g.num_edges(); ++e)
    if (stream.uniform(static_cast<uint64_t>(e)) < p)
      uf.unite(g.edges[e].first, g.edges[e].second);
  int32_t best = 0, second = 0;
  for (int32_t v = 0; v < n; ++v) {
    if (uf.find(v) != v) continue;
    int32_t s = uf.component_size(v);
    if (s > best) {
      second = best;
      best = s;
    } else if (s > second) {
      second = s;
    }
  }
  k1 = static_cast<double>(best) / n;
  k2 = static_cast<double>(second) / n;
  ko = static_cast<double>(uf.component_size(0)) / n;
}

estimate_summary estimate(const graph& g, double p, int64_t reps, uint64_t seed,
                          double alpha, double beta, int threads) {
  require(reps >= 1, errc::invalid_parameter, "estimate requires reps >= 1");
  estimate_summary s;
  s.p = clamp01(p);
  s.reps = reps;
  s.seed = seed;
  s.alpha = alpha;
  s.beta = beta;

  // Per-replica slots; any thread partition reduces to the same result.
  std::vector<double> k1s(reps), k2s(reps);
  auto worker = [&](int64_t lo, int64_t hi) {
    double ko;
    for (int64_t r = lo; r < hi; ++r)
      replica_densities(g, s.p, seed, static_cast<uint64_t>(r), k1s[r], k2s[r], ko);
  };
  int nthreads = std::max(1, threads);
  if (nthreads == 1 || reps < 2 * nthreads) {
    worker(0, reps);
  } else {
    std::vector<std::thread> pool;
    int64_t chunk = (reps + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      int64_t lo = t * chunk, hi = std::min<int64_t>(reps, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  kahan_sum sum1, sum2, sumsq1, sumsq2;
  int64_t hits1 = 0, hits2 = 0;
  for (int64_t r = 0; r < reps; ++r) {
    sum1.add(k1s[r]);
    sumsq1.add(k1s[r] * k1s[r]);
    sum2.add(k2s[r]);
    sumsq2.add(k2s[r] * k2s[r]);
    if (k1s[r] >= alpha) ++hits1;
    if (k2s[r] >= beta) ++hits2;
  }
  s.mean_k1 = sum1.value() / reps;
  s.mean_k2 = sum2.value() / reps;
  s.mean_k1_ci = stats::mean_ci(sum1.value(), sumsq1.value(), reps);
  s.mean_k2_ci = stats::mean_ci(sum2.value(), sumsq2.value(), reps);
  s.prob_k1_geq_alpha = static_cast<double>(hits1) / reps;
  s.prob_k2_geq_beta = static_cast<double>(hits2) / reps;
  s.prob_k1_ci = stats::wilson_ci(hits1, reps);
  s.prob_k2_ci = stats::wilson_ci(hits2, reps);
  return s;
}

}  // namespace percolab
