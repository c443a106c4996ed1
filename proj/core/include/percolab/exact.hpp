#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "percolab/graph.hpp"

namespace percolab {

// Enumeration cap (number of edges): default 22 (~4M configurations),
// overridable via the PERCOLAB_EXACT_CAP environment variable or set_exact_cap.
int32_t exact_cap();
void set_exact_cap(int32_t cap);

// Full product measure P_p over {0,1}^E, weights addressed by edge bitmask.
// Weights are popcount-based (p^k (1-p)^(m-k)) so the 2^|E| table is implicit.
struct exact_dist {
  const graph* g = nullptr;
  double p = 0.0;
  int32_t m = 0;
  std::vector<double> pow_open;    // p^k
  std::vector<double> pow_closed;  // (1-p)^k

  double weight(uint32_t mask) const {
    int32_t k = __builtin_popcount(mask);
    return pow_open[k] * pow_closed[m - k];
  }
  int64_t num_configs() const { return int64_t{1} << m; }
};
exact_dist exact_distribution(const graph& g, double p);

// Cluster sizes of the open subgraph encoded by mask: |K_1|, |K_2| (0 if a
// single cluster), |K_o|.
void mask_cluster_sizes(const graph& g, uint32_t mask, int32_t o, int32_t& k1, int32_t& k2,
                        int32_t& ko);

double exact_theta(const graph& g, double p);                  // E_p ||K_1||
double exact_h(const graph& g, double p, double alpha);        // P_p(||K_1||<a or ||K_2||>=a/2)
double exact_prob_connected(const graph& g, double p);

struct coupling_constants_t {
  double p = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double h = 0.0;
  double delta = 0.0;  // NaN when not applicable
  double q = 0.0;      // NaN when not applicable
  bool applicable = false;  // theta + h < 1
};
coupling_constants_t coupling_constants(const graph& g, double p, double alpha);

// Exact rational mode (|E| <= 16, rational p): bit-exact regression values.
struct rational {
  int64_t num = 0;
  int64_t den = 1;  // > 0, reduced
};
rational make_rational(int64_t num, int64_t den);
bool rational_eq(rational a, rational b);
rational exact_prob_connected_rational(const graph& g, rational p);
rational exact_theta_rational(const graph& g, rational p);

// P_p(next_edge open | ||K_o|| < alpha, revealed), by direct summation over
// all completions of the unrevealed edges. revealed[e] is -1 (unrevealed),
// 0 (closed) or 1 (open). Errors: conditioning-on-null-event when no
// completion satisfies both the revealed history and the conditioning event.
double conditioned_edge_prob(const graph& g, double p, int32_t o, double alpha,
                             const std::vector<int8_t>& revealed, int32_t next_edge);

// Bit table of the conditioning event {||K_o(mask)|| < alpha} over all masks.
class conditioning_table {
 public:
  conditioning_table(const graph& g, int32_t o, double alpha);
  bool event(uint32_t mask) const { return (bits_[mask >> 3] >> (mask & 7u)) & 1u; }
  int64_t num_masks() const { return int64_t{1} << m_; }

 private:
  int32_t m_;
  std::vector<uint8_t> bits_;
};

// Memoized binary tree of the exploration process under P̂ = P_p(·| ||K_o||<alpha):
// each node fixes a revealed history, stores the next edge per the
// smallest-index frontier rule and its exact conditional open probability.
// Built once per (g, p, alpha, o); shared read-only by coupled runs.
class exploration_tree {
 public:
  struct node {
    int32_t edge = -1;
    double p_open = 0.0;
    int32_t child_open = -1;    // -1: leaf or zero-mass branch (never walked)
    int32_t child_closed = -1;
  };

  exploration_tree(const graph& g, double p, double alpha, int32_t o);

  const graph& g() const { return *g_; }
  int32_t root() const { return root_; }
  const node& at(int32_t idx) const { return nodes_[idx]; }
  int64_t size() const { return static_cast<int64_t>(nodes_.size()); }
  double event_mass() const { return event_mass_; }  // P_p(||K_o|| < alpha)

  // P̂(tau_fail < |E|) at threshold q: total conditioned mass reaching a node
  // whose next-edge conditional probability drops below q.
  double tau_fail_prob(double q) const;

 private:
  int32_t build(uint32_t known, uint32_t values);
  double walk_fail(int32_t idx, double reach, double q) const;

  const graph* g_;
  int32_t m_;
  int32_t o_;
  exact_dist dist_;
  conditioning_table table_;
  std::vector<node> nodes_;
  int32_t root_ = -1;
  double event_mass_ = 0.0;
};

// Exact P̂(tau_fail < |E|) for the lemma's canonical q = (1-theta-delta)p, or
// at q_override (diagnostic; must be <= p so the proof's frontier-edge
// structure is preserved). Errors: not-applicable when theta+h >= 1 and the
// conditioning is not vacuous (alpha <= 1), capacity-exceeded beyond the cap.
double exact_tau_fail_prob(const graph& g, double p, double alpha, int32_t o,
                           std::optional<double> q_override = std::nullopt);

}  // namespace percolab
