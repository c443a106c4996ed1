#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "percolab/coupling.hpp"
#include "percolab/error.hpp"
#include "percolab/exact.hpp"
#include "percolab/graph.hpp"
#include "percolab/io.hpp"
#include "percolab/stats.hpp"

using namespace percolab;

namespace {

// deterministic biting q: strictly between the median sub-root conditional
// and the next one up, so tau_fail fires with probability in (0, 1]
double biting_q(const exploration_tree& tree) {
  double root_p = tree.at(tree.root()).p_open;
  std::vector<double> below;
  for (int64_t i = 0; i < tree.size(); ++i) {
    double v = tree.at(static_cast<int32_t>(i)).p_open;
    if (v < root_p) below.push_back(v);
  }
  REQUIRE(!below.empty());
  std::sort(below.begin(), below.end());
  below.erase(std::unique(below.begin(), below.end()), below.end());
  double lo = below[below.size() / 2];
  double hi = below.size() / 2 + 1 < below.size() ? below[below.size() / 2 + 1] : root_p;
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("session construction enforces applicability") {
  CHECK_THROWS_AS(coupling_session(gen_complete(4), 0.3, 0.4, 0), error);  // theta + h >= 1
  CHECK_THROWS_AS(coupling_session(gen_complete(5), 0.5, 0.5, 0, 0.7),
                  error);  // q_override > p
  CHECK_NOTHROW(coupling_session(gen_complete(5), 0.5, 0.5, 0));
}

TEST_CASE("coupled run is deterministic and reproducible") {
  graph g = gen_complete(5);  // the session keeps a reference to the graph
  coupling_session sess(g, 0.5, 0.5, 0);
  coupling_outcome a = sess.run(7, 3);
  coupling_outcome b = sess.run(7, 3);
  CHECK(a.omega_hat.open_edges == b.omega_hat.open_edges);
  CHECK(a.omega_q.open_edges == b.omega_q.open_edges);
  CHECK(a.trace.order == b.trace.order);
  coupling_outcome c = sess.run(7, 4);
  CHECK(a.omega_hat.open_edges != c.omega_hat.open_edges);
}

TEST_CASE("pathwise domination holds run by run at the canonical q") {
  graph g = gen_complete(5);
  coupling_session sess(g, 0.5, 0.5, 0);
  for (uint64_t r = 0; r < 2000; ++r) {
    coupling_outcome out = sess.run(13, r);
    CHECK(out.monotone_ok);
    CHECK(!out.error_event_A);  // canonical q < 0 cannot fail
    // independent re-check of omega_q <= omega_hat (A did not occur)
    for (int32_t e = 0; e < sess.g().num_edges(); ++e)
      if (out.omega_q.open(e)) CHECK(out.omega_hat.open(e));
  }
}

TEST_CASE("omega_hat respects the conditioning event in every run") {
  graph g = gen_complete(4);
  coupling_session sess(g, 0.7, 0.6, 0);
  conditioning_table table(g, 0, 0.6);
  for (uint64_t r = 0; r < 3000; ++r) {
    coupling_outcome out = sess.run(5, r);
    uint32_t mask = 0;
    for (int32_t e = 0; e < g.num_edges(); ++e)
      if (out.omega_hat.open(e)) mask |= uint32_t{1} << e;
    CHECK(table.event(mask));
  }
}

TEST_CASE("error event under a biting q: frequency, labels and the moat bound") {
  graph g = gen_complete(4);
  coupling_session base(g, 0.7, 0.6, 0);
  double q = biting_q(base.tree());
  coupling_session sess(g, 0.7, 0.6, 0, q);
  CHECK(sess.exact_fail_prob() > 0.0);

  int64_t reps = 8000, count = 0;
  for (uint64_t r = 0; r < static_cast<uint64_t>(reps); ++r) {
    coupling_outcome out = sess.run(7, r);
    CHECK(out.monotone_ok);
    if (!out.error_event_A) continue;
    ++count;
    CHECK(out.trace.tau_fail < out.trace.tau_moat);
    // v_- and v_+ are the endpoints of the failing edge, v_- on the revealed
    // side of the moat
    int32_t fail_edge = out.trace.order[out.trace.tau_fail];
    auto [u, v] = g.edges[fail_edge];
    bool match = (out.trace.v_minus == u && out.trace.v_plus == v) ||
                 (out.trace.v_minus == v && out.trace.v_plus == u);
    CHECK(match);
  }
  double freq = static_cast<double>(count) / static_cast<double>(reps);
  double se = stats::binom_stderr(sess.exact_fail_prob(), reps);
  CHECK(count > 0);
  CHECK(std::abs(freq - sess.exact_fail_prob()) <= 4 * se + 1e-12);
}

TEST_CASE("vacuous conditioning samples plain percolation") {
  graph g = gen_complete(4);
  coupling_session sess(g, 0.6, 1.5, 0);
  CHECK(sess.vacuous());
  CHECK(sess.h_used() == 0.0);
  CHECK(sess.q() == doctest::Approx((1.0 - sess.constants().theta) * 0.6));

  int64_t reps = 20000;
  std::vector<int64_t> open_count(static_cast<size_t>(g.num_edges()), 0);
  for (uint64_t r = 0; r < static_cast<uint64_t>(reps); ++r) {
    coupling_outcome out = sess.run(21, r);
    for (int32_t e = 0; e < g.num_edges(); ++e)
      if (out.omega_hat.open(e)) ++open_count[static_cast<size_t>(e)];
  }
  double se = stats::binom_stderr(0.6, reps);
  for (int64_t c : open_count)
    CHECK(std::abs(static_cast<double>(c) / static_cast<double>(reps) - 0.6) <= 4 * se);

  CHECK_THROWS_AS(coupling_session(g, 1.0, 1.5, 0), error);  // theta = 1
}

TEST_CASE("domination report aggregates the lemma's guarantees") {
  domination_report_t rep = domination_report(gen_complete(4), 0.7, 0.6, 0, 20000, 7);
  CHECK(rep.monotone_all);
  CHECK(rep.freq_bound_ok);
  CHECK(rep.freq_matches_exact);
  CHECK(rep.marginals_ok);
  CHECK(rep.bound_h_sqrt == doctest::Approx(std::sqrt(rep.h)));
  CHECK(rep.freq_A == 0.0);
  CHECK(rep.exact_fail_prob == 0.0);
  CHECK(!rep.vacuous);
  CHECK(rep.reps == 20000);

  // per-edge marginals of omega_hat cover q (trivially at q < 0, sharply
  // under an override)
  for (const edge_marginal& em : rep.marginals) CHECK(em.ok);
}

TEST_CASE("domination report under an override matches the exact failure mass") {
  graph g = gen_complete(4);
  coupling_session base(g, 0.7, 0.6, 0);
  double q = biting_q(base.tree());
  domination_report_t rep = domination_report(g, 0.7, 0.6, 0, 20000, 7, q);
  CHECK(rep.q_override.has_value());
  CHECK(rep.freq_matches_exact);
  CHECK(rep.monotone_all);
  CHECK(rep.freq_A > 0.0);
  CHECK(rep.exact_fail_prob > 0.0);
}

TEST_CASE("outcome serialization has the documented shape") {
  graph g = gen_complete(5);
  coupling_outcome out = run_coupling(g, 0.5, 0.5, 0, 7);
  json j = outcome_to_json(g, out);
  CHECK(j.contains("q_used"));
  CHECK(j.contains("error_event_A"));
  CHECK(j.contains("tau_fail"));
  CHECK(j.contains("tau_moat"));
  CHECK(j["monotone_ok"].get<bool>());
  std::string lines = trace_to_jsonl(out.trace);
  // one line per edge, each a JSON object with the four documented keys
  int64_t n_lines = std::count(lines.begin(), lines.end(), '\n');
  CHECK(n_lines == g.num_edges());
  json first = json::parse(lines.substr(0, lines.find('\n')));
  CHECK(first["step"] == 1);
  CHECK(first.contains("edge"));
  CHECK(first.contains("state"));
  CHECK(first.contains("eligible_frontier_size"));
}
