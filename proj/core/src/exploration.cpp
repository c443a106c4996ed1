#include "percolab/exploration.hpp"

#include <functional>
#include <queue>

#include "percolab/error.hpp"
#include "percolab/union_find.hpp"

namespace percolab {

exploration_trace explore(const graph& g, const configuration& c, int32_t o) {
  require(c.graph_id == g.hash && static_cast<int32_t>(c.open_edges.size()) == g.num_edges(),
          errc::invalid_argument, "configuration does not belong to this graph");
  require(o >= 0 && o < g.num_vertices, errc::invalid_index, "vertex index out of range");

  int32_t m = g.num_edges();
  exploration_trace tr;
  tr.order.reserve(m);
  tr.states.reserve(m);
  tr.frontier_sizes.reserve(m);
  tr.tau_fail = m;

  union_find uf(g.num_vertices);
  std::vector<uint8_t> revealed(m, 0), eligible(m, 0);
  // Min-index heap of frontier candidates with lazy deletion; eligibility
  // never revokes (comp(o) only grows), so stale entries are only duplicates.
  std::priority_queue<int32_t, std::vector<int32_t>, std::greater<int32_t>> heap;
  int32_t eligible_count = 0;

  auto absorb = [&](int32_t v) {
    for (auto [w, e] : g.adjacency[v]) {
      (void)w;
      if (!revealed[e] && !eligible[e]) {
        eligible[e] = 1;
        ++eligible_count;
        heap.push(e);
      }
    }
  };
  absorb(o);

  int32_t remaining = m;
  while (!heap.empty()) {
    int32_t e = heap.top();
    heap.pop();
    if (revealed[e]) continue;
    tr.frontier_sizes.push_back(eligible_count);
    tr.order.push_back(e);
    tr.states.push_back(c.open(e) ? 1 : 0);
    revealed[e] = 1;
    --eligible_count;
    --remaining;
    if (c.open(e)) {
      auto [u, v] = g.edges[e];
      bool u_in = uf.connected(u, o), v_in = uf.connected(v, o);
      uf.unite(u, v);
      // A frontier edge has at least one endpoint in comp(o); an open reveal
      // can pull in at most the other one.
      if (!u_in && uf.connected(u, o)) absorb(u);
      if (!v_in && uf.connected(v, o)) absorb(v);
    }
  }
  tr.phase1_steps = static_cast<int32_t>(tr.order.size());

  // Second phase: comp(o) can no longer grow, so the rule degrades to plain
  // smallest-index order over whatever is left.
  for (int32_t e = 0; e < m && remaining > 0; ++e) {
    if (revealed[e]) continue;
    tr.frontier_sizes.push_back(remaining);
    tr.order.push_back(e);
    tr.states.push_back(c.open(e) ? 1 : 0);
    revealed[e] = 1;
    --remaining;
    if (c.open(e)) uf.unite(g.edges[e].first, g.edges[e].second);
  }

  // tau_moat: last step whose edge touches the final cluster of o.
  for (int32_t t = m; t >= 1; --t) {
    auto [u, v] = g.edges[tr.order[t - 1]];
    if (uf.connected(u, o) || uf.connected(v, o)) {
      tr.tau_moat = t;
      break;
    }
  }
  return tr;
}

}  // namespace percolab
