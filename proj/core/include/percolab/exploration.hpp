#pragma once

#include <cstdint>
#include <vector>

#include "percolab/graph.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

// Record of the edge-revealing exploration from o: frontier edges of o's open
// cluster by smallest index first, then all remaining edges by smallest index.
// Steps are 1-based (rho_1 .. rho_|E| = order[0..|E|-1]).
struct exploration_trace {
  std::vector<int32_t> order;           // rho_t = order[t-1]
  std::vector<uint8_t> states;          // revealed state per step
  std::vector<int32_t> frontier_sizes;  // eligible candidates just before each step
  int32_t phase1_steps = 0;             // reveals made under the frontier rule

  // First t in 0..|E| with P(rho_{t+1} open | F_t) < q, inf empty = |E|.
  // Purely combinatorial exploration never evaluates it; coupled runs fill it.
  int32_t tau_fail = 0;

  // Last step revealing an edge with an endpoint in K_o (the final cluster
  // of o), i.e. an edge of K_o ∪ ∂K_o.
  int32_t tau_moat = 0;

  // Endpoints of the failing edge order[tau_fail] when tau_fail < |E|:
  // v_minus is joined to o by open edges revealed in steps 1..tau_fail,
  // v_plus is not. -1 when tau_fail = |E|.
  int32_t v_minus = -1;
  int32_t v_plus = -1;
};

// Deterministic exploration of configuration c from vertex o. Errors:
// invalid-argument when c does not belong to g, invalid-index on o.
exploration_trace explore(const graph& g, const configuration& c, int32_t o);

}  // namespace percolab
