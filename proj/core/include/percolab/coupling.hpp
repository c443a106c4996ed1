#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "percolab/exact.hpp"
#include "percolab/exploration.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

// One realized run of the approximately monotone coupling between P_q and
// P̂ = P_p(· | ||K_o|| < alpha), built from a single shared uniform per edge.
struct coupling_outcome {
  configuration omega_q;    // law P_q: 1{U_e <= q}
  configuration omega_hat;  // law P̂: revealed by the exploration with exact
                            // conditional probabilities, 1{U_rho <= P̂(...|F)}
  bool error_event_A = false;  // tau_fail < |E|
  bool monotone_ok = false;    // omega_q ⪯ omega_hat ∪ 1_A edgewise
  exploration_trace trace;     // with tau_fail, tau_moat, v_-/v_+ filled in
  double q_used = 0.0;
};

struct edge_marginal {
  int32_t edge = 0;
  double freq_union = 0.0;  // open frequency in omega_hat ∪ 1_A
  double freq_q = 0.0;      // open frequency in omega_q (expected: max(q,0))
  bool ok = false;          // freq_union >= q within 4 standard errors
};

struct domination_report_t {
  double p = 0.0, alpha = 0.0;
  double theta = 0.0, h = 0.0;  // h as used (0 in the vacuous alpha > 1 mode)
  double delta = 0.0, q = 0.0;
  bool vacuous = false;  // alpha > 1: conditioning on the full space
  std::optional<double> q_override;
  int64_t reps = 0;
  uint64_t seed = 0;
  double freq_A = 0.0;
  double exact_fail_prob = 0.0;  // exact P̂(tau_fail < |E|) at the q used
  double bound_h_sqrt = 0.0;     // h^{1/2}
  bool freq_bound_ok = false;     // freq_A <= h^{1/2} + 4 se
  bool freq_matches_exact = false;  // |freq_A - exact| <= 4 se
  bool monotone_all = false;        // monotone_ok in 100% of runs
  bool marginals_ok = false;
  std::vector<edge_marginal> marginals;
};

// Shared read-only state for repeated coupled runs on one (g, p, alpha, o):
// the lemma's constants and the memoized exploration tree. Requires theta+h<1
// (or theta < 1 when alpha > 1 makes the conditioning vacuous); q_override
// (diagnostic) replaces the canonical q = (1-theta-delta)p and must be <= p,
// which is what keeps every failing edge a frontier edge.
class coupling_session {
 public:
  coupling_session(const graph& g, double p, double alpha, int32_t o,
                   std::optional<double> q_override = std::nullopt);

  coupling_outcome run(uint64_t seed, uint64_t replica = 0) const;

  const graph& g() const { return *g_; }
  const exploration_tree& tree() const { return tree_; }
  const coupling_constants_t& constants() const { return cc_; }
  double q() const { return q_; }
  double h_used() const { return h_used_; }
  double delta_used() const { return delta_used_; }
  bool vacuous() const { return vacuous_; }
  int32_t origin() const { return o_; }
  // Exact P̂(tau_fail < |E|) at the session's q.
  double exact_fail_prob() const { return exact_fail_; }

 private:
  const graph* g_;
  int32_t o_;
  double p_, alpha_, q_, h_used_, delta_used_;
  bool vacuous_;
  coupling_constants_t cc_;
  exploration_tree tree_;
  double exact_fail_ = 0.0;
};

coupling_outcome run_coupling(const graph& g, double p, double alpha, int32_t o, uint64_t seed,
                              std::optional<double> q_override = std::nullopt);

// Aggregates reps coupled runs (replicas 0..reps-1 of the given seed):
// frequency of the error event A against both the lemma bound h^{1/2} and the
// exact oracle value, pathwise monotonicity in every run, and per-edge
// domination of the omega_hat ∪ 1_A marginals over q.
domination_report_t domination_report(const graph& g, double p, double alpha, int32_t o,
                                      int64_t reps, uint64_t seed,
                                      std::optional<double> q_override = std::nullopt);

}  // namespace percolab
