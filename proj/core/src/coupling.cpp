#include "percolab/coupling.hpp"

#include <cmath>

#include "percolab/error.hpp"
#include "percolab/rng.hpp"
#include "percolab/stats.hpp"
#include "percolab/union_find.hpp"

namespace percolab {

static coupling_constants_t checked_constants(const graph& g, double p, double alpha) {
  coupling_constants_t cc = coupling_constants(g, p, alpha);
  if (alpha > 1.0)
    require(cc.theta < 1.0, errc::not_applicable, "theta = 1 leaves no usable q");
  else
    require(cc.applicable, errc::not_applicable,
            "coupling constants not applicable (theta + h >= 1)");
  return cc;
}

coupling_session::coupling_session(const graph& g, double p, double alpha, int32_t o,
                                   std::optional<double> q_override)
    : g_(&g), o_(o), p_(p), alpha_(alpha), vacuous_(alpha > 1.0),
      cc_(checked_constants(g, p, alpha)), tree_(g, p, alpha, o) {
  if (vacuous_) {
    // ||K_o|| < alpha holds surely, so P̂ = P_p; the lemma degenerates to
    // h = 0, delta = 0, q = (1-theta)p, valid whenever theta < 1.
    h_used_ = 0.0;
    delta_used_ = 0.0;
    q_ = (1.0 - cc_.theta) * p;
  } else {
    h_used_ = cc_.h;
    delta_used_ = cc_.delta;
    q_ = cc_.q;
  }
  if (q_override) {
    require(*q_override <= p, errc::invalid_parameter,
            "q_override must be <= p (frontier-edge structure of the proof)");
    q_ = *q_override;
  }
  exact_fail_ = tree_.tau_fail_prob(q_);
}

coupling_outcome coupling_session::run(uint64_t seed, uint64_t replica) const {
  const graph& g = *g_;
  int32_t m = g.num_edges();
  rng::replica_stream stream(seed, replica);

  coupling_outcome out;
  out.q_used = q_;
  out.omega_hat.graph_id = g.hash;
  out.omega_hat.open_edges.assign(m, 0);
  out.omega_q.graph_id = g.hash;
  out.omega_q.open_edges.resize(m);
  for (int32_t e = 0; e < m; ++e) out.omega_q.open_edges[e] = stream.uniform(e) <= q_ ? 1 : 0;

  // Reveal along the memoized tree: step t+1 asks node.p_open = P̂(rho_{t+1}
  // open | F_t); the same U_e drives omega_hat here and omega_q above.
  int32_t tau_fail = m;
  int32_t idx = tree_.root();
  for (int32_t t = 0; idx >= 0; ++t) {
    const exploration_tree::node& nd = tree_.at(idx);
    if (nd.p_open < q_ && tau_fail == m) tau_fail = t;
    bool open = stream.uniform(nd.edge) <= nd.p_open;
    out.omega_hat.open_edges[nd.edge] = open ? 1 : 0;
    idx = open ? nd.child_open : nd.child_closed;
  }
  out.error_event_A = tau_fail < m;

  // The combinatorial re-exploration of the realized omega_hat must retrace
  // the tree's revealing order; it also supplies tau_moat and frontier sizes.
  out.trace = explore(g, out.omega_hat, o_);
  {
    int32_t walk = tree_.root();
    for (int32_t t = 0; t < m; ++t) {
      const exploration_tree::node& nd = tree_.at(walk);
      require(nd.edge == out.trace.order[t], errc::internal_invariant_violation,
              "exploration tree order diverged from re-exploration");
      walk = out.trace.states[t] ? nd.child_open : nd.child_closed;
    }
  }
  out.trace.tau_fail = tau_fail;

  if (!vacuous_) {
    // The realized omega_hat must satisfy the conditioning event...
    cluster_report rep = clusters(g, out.omega_hat);
    require(rep.density_o < alpha_, errc::internal_invariant_violation,
            "omega_hat violates the conditioning event ||K_o|| < alpha");
    // ...which makes an open pivotal edge impossible.
    for (int32_t e = 0; e < m; ++e)
      require(!(out.omega_hat.open(e) && is_pivotal(g, out.omega_hat, e, o_, alpha_)),
              errc::internal_invariant_violation, "open pivotal edge under the conditioning");
  }

  if (out.error_event_A) {
    // tau_fail < tau_moat pathwise: the failing edge touches K_o via v_-.
    require(out.trace.tau_fail < out.trace.tau_moat, errc::internal_invariant_violation,
            "tau_fail < |E| without tau_fail < tau_moat");
    union_find uf(g.num_vertices);
    for (int32_t t = 0; t < tau_fail; ++t)
      if (out.trace.states[t]) {
        auto [u, v] = g.edges[out.trace.order[t]];
        uf.unite(u, v);
      }
    auto [u, v] = g.edges[out.trace.order[tau_fail]];
    bool u_in = uf.connected(u, o_), v_in = uf.connected(v, o_);
    require(u_in != v_in, errc::internal_invariant_violation,
            "failing edge is not a frontier edge of o's revealed cluster");
    out.trace.v_minus = u_in ? u : v;
    out.trace.v_plus = u_in ? v : u;
  }

  // Pathwise monotonicity. Through step tau_fail every revealed probability
  // was >= q, so omega_q <= omega_hat there with the shared uniform — exact,
  // not statistical. Globally, 1_A absorbs everything after the failure.
  for (int32_t t = 0; t < tau_fail; ++t) {
    int32_t e = out.trace.order[t];
    require(out.omega_q.open(e) <= out.omega_hat.open(e), errc::internal_invariant_violation,
            "omega_q exceeds omega_hat before tau_fail");
  }
  bool mono = true;
  if (!out.error_event_A)
    for (int32_t e = 0; e < m && mono; ++e)
      if (out.omega_q.open(e) && !out.omega_hat.open(e)) mono = false;
  out.monotone_ok = mono;
  return out;
}

coupling_outcome run_coupling(const graph& g, double p, double alpha, int32_t o, uint64_t seed,
                              std::optional<double> q_override) {
  coupling_session session(g, p, alpha, o, q_override);
  return session.run(seed);
}

domination_report_t domination_report(const graph& g, double p, double alpha, int32_t o,
                                      int64_t reps, uint64_t seed,
                                      std::optional<double> q_override) {
  require(reps >= 1, errc::invalid_parameter, "reps must be >= 1");
  coupling_session session(g, p, alpha, o, q_override);
  int32_t m = g.num_edges();

  domination_report_t rep;
  rep.p = p;
  rep.alpha = alpha;
  rep.theta = session.constants().theta;
  rep.h = session.h_used();
  rep.delta = session.delta_used();
  rep.q = session.q();
  rep.vacuous = session.vacuous();
  rep.q_override = q_override;
  rep.reps = reps;
  rep.seed = seed;
  rep.exact_fail_prob = session.exact_fail_prob();
  rep.bound_h_sqrt = std::sqrt(session.h_used());

  int64_t count_A = 0;
  std::vector<int64_t> open_union(m, 0), open_q(m, 0);
  bool monotone_all = true;
  for (int64_t r = 0; r < reps; ++r) {
    coupling_outcome out = session.run(seed, static_cast<uint64_t>(r));
    monotone_all = monotone_all && out.monotone_ok;
    if (out.error_event_A) ++count_A;
    for (int32_t e = 0; e < m; ++e) {
      // omega_hat ∪ 1_A: the all-open configuration on the error event.
      if (out.error_event_A || out.omega_hat.open(e)) ++open_union[e];
      if (out.omega_q.open(e)) ++open_q[e];
    }
  }

  rep.freq_A = static_cast<double>(count_A) / reps;
  rep.monotone_all = monotone_all;
  double se_A = stats::binom_stderr(rep.freq_A, reps);
  double se_exact = stats::binom_stderr(rep.exact_fail_prob, reps);
  rep.freq_bound_ok = rep.freq_A <= rep.bound_h_sqrt + 4.0 * se_A + 1e-12;
  rep.freq_matches_exact =
      std::abs(rep.freq_A - rep.exact_fail_prob) <= 4.0 * std::max(se_A, se_exact) + 1e-12;

  rep.marginals.resize(m);
  rep.marginals_ok = true;
  for (int32_t e = 0; e < m; ++e) {
    edge_marginal& em = rep.marginals[e];
    em.edge = e;
    em.freq_union = static_cast<double>(open_union[e]) / reps;
    em.freq_q = static_cast<double>(open_q[e]) / reps;
    em.ok = em.freq_union >= session.q() - 4.0 * stats::binom_stderr(em.freq_union, reps) - 1e-12;
    rep.marginals_ok = rep.marginals_ok && em.ok;
  }
  return rep;
}

}  // namespace percolab
