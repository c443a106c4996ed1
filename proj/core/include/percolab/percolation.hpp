#pragma once

#include <cstdint>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/stats.hpp"

namespace percolab {

// One bond-percolation sample: open/closed per edge index, stamped with the
// graph's structural hash so mismatched (graph, configuration) pairs are
// detected instead of silently misread.
struct configuration {
  std::vector<uint8_t> open_edges;
  uint64_t graph_id = 0;

  bool open(int32_t e) const { return open_edges[e] != 0; }
};

// Each edge opens iff its shared uniform U(seed, replica, edge) < p, with p
// clamped to [0,1] (p > 1 behaves as p = 1, p < 0 as p = 0). Because uniforms
// live in the open interval (0,1), the p = 0 and p = 1 boundaries are certain,
// and sampling at p <= p' with the same (seed, replica) is edgewise monotone.
configuration sample(const graph& g, double p, uint64_t seed, uint64_t replica = 0);

struct cluster_report {
  std::vector<int32_t> cluster_sizes;  // descending; ties: smaller min vertex first
  double density_k1 = 0.0;
  double density_k2 = 0.0;  // 0 if only one cluster
  double density_o = 0.0;   // density of the cluster containing vertex o = 0
  std::vector<int32_t> cluster_of;  // vertex -> cluster rank (0 = K_1)
};
cluster_report clusters(const graph& g, const configuration& c);

// Pivotality per the conditioned-coupling definition: ||K_o(omega \ e)|| < alpha
// but ||K_o(omega ∪ e)|| >= alpha. The state of e in c itself is ignored.
bool is_pivotal(const graph& g, const configuration& c, int32_t e, int32_t o, double alpha);

struct estimate_summary {
  double p = 0.0;
  int64_t reps = 0;
  uint64_t seed = 0;
  double alpha = 0.0, beta = 0.0;
  double mean_k1 = 0.0, mean_k2 = 0.0;
  ci_t mean_k1_ci, mean_k2_ci;
  double prob_k1_geq_alpha = 0.0, prob_k2_geq_beta = 0.0;
  ci_t prob_k1_ci, prob_k2_ci;
};

// Monte Carlo summary over reps independent replicas (replica r uses the RNG
// stream (seed, r, ·)). Frequencies get Wilson 95% intervals, means get
// normal-approximation intervals. Replicas are partitioned across threads into
// fixed slots and reduced in replica order, so the thread count never changes
// any output bit.
estimate_summary estimate(const graph& g, double p, int64_t reps, uint64_t seed,
                          double alpha = 0.5, double beta = 0.25, int threads = 1);

// Internal fused sampler: densities of K_1, K_2, K_o for one replica without
// materializing a configuration. Shared by estimate/estimators hot loops.
void replica_densities(const graph& g, double p, uint64_t seed, uint64_t replica,
                       double& k1, double& k2, double& ko);

}  // namespace percolab
