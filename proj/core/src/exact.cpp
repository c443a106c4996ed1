#include "percolab/exact.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "percolab/error.hpp"
#include "percolab/stats.hpp"
#include "percolab/union_find.hpp"

namespace percolab {

static int32_t cap_from_env() {
  const char* s = std::getenv("PERCOLAB_EXACT_CAP");
  if (!s || !*s) return 22;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  require(end && *end == '\0' && v >= 1 && v <= 26, errc::invalid_parameter,
          "PERCOLAB_EXACT_CAP must be an integer in [1,26]");
  return static_cast<int32_t>(v);
}

static int32_t& cap_ref() {
  static int32_t cap = cap_from_env();
  return cap;
}

int32_t exact_cap() { return cap_ref(); }

void set_exact_cap(int32_t cap) {
  require(cap >= 1 && cap <= 26, errc::invalid_parameter, "exact cap must be in [1,26]");
  cap_ref() = cap;
}

static void check_cap(const graph& g, int32_t limit) {
  require(g.num_edges() <= limit, errc::capacity_exceeded,
          "graph has " + std::to_string(g.num_edges()) + " edges; cap is " +
              std::to_string(limit));
}

exact_dist exact_distribution(const graph& g, double p) {
  check_cap(g, exact_cap());
  require(p >= 0.0 && p <= 1.0, errc::invalid_parameter, "p must lie in [0,1]");
  exact_dist d;
  d.g = &g;
  d.p = p;
  d.m = g.num_edges();
  d.pow_open.resize(d.m + 1);
  d.pow_closed.resize(d.m + 1);
  d.pow_open[0] = d.pow_closed[0] = 1.0;
  for (int32_t k = 1; k <= d.m; ++k) {
    d.pow_open[k] = d.pow_open[k - 1] * p;
    d.pow_closed[k] = d.pow_closed[k - 1] * (1.0 - p);
  }
  return d;
}

void mask_cluster_sizes(const graph& g, uint32_t mask, int32_t o, int32_t& k1, int32_t& k2,
                        int32_t& ko) {
  union_find uf(g.num_vertices);
  for (int32_t e = 0; e < g.num_edges(); ++e)
    if (mask & (uint32_t{1} << e)) uf.unite(g.edges[e].first, g.edges[e].second);
  k1 = 0;
  k2 = 0;
  for (int32_t v = 0; v < g.num_vertices; ++v) {
    if (uf.find(v) != v) continue;
    int32_t s = uf.component_size(v);
    if (s > k1) {
      k2 = k1;
      k1 = s;
    } else if (s > k2) {
      k2 = s;
    }
  }
  ko = uf.component_size(o);
}

double exact_theta(const graph& g, double p) {
  exact_dist d = exact_distribution(g, p);
  kahan_sum acc;
  int32_t k1, k2, ko;
  for (uint32_t mask = 0;; ++mask) {
    mask_cluster_sizes(g, mask, 0, k1, k2, ko);
    acc.add(d.weight(mask) * (static_cast<double>(k1) / g.num_vertices));
    if (mask == (uint32_t{1} << d.m) - 1) break;
  }
  return acc.value();
}

double exact_h(const graph& g, double p, double alpha) {
  exact_dist d = exact_distribution(g, p);
  int32_t n = g.num_vertices;
  kahan_sum acc;
  int32_t k1, k2, ko;
  for (uint32_t mask = 0;; ++mask) {
    mask_cluster_sizes(g, mask, 0, k1, k2, ko);
    double dk1 = static_cast<double>(k1) / n, dk2 = static_cast<double>(k2) / n;
    if (dk1 < alpha || dk2 >= alpha / 2.0) acc.add(d.weight(mask));
    if (mask == (uint32_t{1} << d.m) - 1) break;
  }
  return acc.value();
}

double exact_prob_connected(const graph& g, double p) {
  exact_dist d = exact_distribution(g, p);
  kahan_sum acc;
  int32_t k1, k2, ko;
  for (uint32_t mask = 0;; ++mask) {
    mask_cluster_sizes(g, mask, 0, k1, k2, ko);
    if (k1 == g.num_vertices) acc.add(d.weight(mask));
    if (mask == (uint32_t{1} << d.m) - 1) break;
  }
  return acc.value();
}

coupling_constants_t coupling_constants(const graph& g, double p, double alpha) {
  coupling_constants_t c;
  c.p = p;
  c.alpha = alpha;
  c.theta = exact_theta(g, p);
  c.h = exact_h(g, p, alpha);
  c.applicable = c.theta + c.h < 1.0;
  if (c.applicable) {
    c.delta = 2.0 * std::sqrt(c.h) / (1.0 - c.theta - c.h);
    c.q = (1.0 - c.theta - c.delta) * p;
  } else {
    c.delta = std::nan("");
    c.q = std::nan("");
  }
  return c;
}

// ---- rational mode ----------------------------------------------------------

static __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

rational make_rational(int64_t num, int64_t den) {
  require(den != 0, errc::invalid_parameter, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

bool rational_eq(rational a, rational b) {
  return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

// Accumulates sum over masks of value(mask) * a^k * (b-a)^(m-k) as an exact
// integer against denominator scale * b^m, then reduces.
template <typename ValueFn>
static rational exact_rational_sum(const graph& g, rational p, int64_t scale, ValueFn value) {
  check_cap(g, std::min<int32_t>(exact_cap(), 16));
  require(p.num >= 0 && p.num <= p.den, errc::invalid_parameter, "p must lie in [0,1]");
  int32_t m = g.num_edges();
  int64_t a = p.num, b = p.den, c = b - a;

  std::vector<int64_t> pow_a(m + 1, 1), pow_c(m + 1, 1);
  for (int32_t k = 1; k <= m; ++k) {
    require(pow_a[k - 1] <= INT64_MAX / std::max<int64_t>(a, 1) &&
                pow_c[k - 1] <= INT64_MAX / std::max<int64_t>(c, 1),
            errc::capacity_exceeded, "rational weights overflow int64");
    pow_a[k] = pow_a[k - 1] * a;
    pow_c[k] = pow_c[k - 1] * c;
  }
  int64_t bm = 1;
  for (int32_t k = 0; k < m; ++k) {
    require(bm <= INT64_MAX / b, errc::capacity_exceeded, "rational denominator overflows");
    bm *= b;
  }

  __int128 num = 0;
  int32_t k1, k2, ko;
  for (uint32_t mask = 0;; ++mask) {
    int64_t v = value(mask, k1, k2, ko);
    if (v != 0) {
      int32_t k = __builtin_popcount(mask);
      num += static_cast<__int128>(v) * pow_a[k] * pow_c[m - k];
    }
    if (mask == (uint32_t{1} << m) - 1) break;
  }
  __int128 den = static_cast<__int128>(bm) * scale;
  __int128 g128 = gcd128(num, den);
  if (g128 > 1) {
    num /= g128;
    den /= g128;
  }
  require(num <= INT64_MAX && den <= INT64_MAX, errc::capacity_exceeded,
          "reduced rational exceeds int64");
  return {static_cast<int64_t>(num), static_cast<int64_t>(den)};
}

rational exact_prob_connected_rational(const graph& g, rational p) {
  return exact_rational_sum(g, p, 1, [&](uint32_t mask, int32_t& k1, int32_t& k2, int32_t& ko) {
    mask_cluster_sizes(g, mask, 0, k1, k2, ko);
    return k1 == g.num_vertices ? int64_t{1} : int64_t{0};
  });
}

rational exact_theta_rational(const graph& g, rational p) {
  return exact_rational_sum(
      g, p, g.num_vertices, [&](uint32_t mask, int32_t& k1, int32_t& k2, int32_t& ko) {
        mask_cluster_sizes(g, mask, 0, k1, k2, ko);
        return static_cast<int64_t>(k1);
      });
}

// ---- conditioned measure ----------------------------------------------------

conditioning_table::conditioning_table(const graph& g, int32_t o, double alpha) : m_(g.num_edges()) {
  check_cap(g, exact_cap());
  require(o >= 0 && o < g.num_vertices, errc::invalid_index, "vertex index out of range");
  bits_.assign((size_t{1} << m_) / 8 + 1, 0);
  int32_t n = g.num_vertices;
  int32_t k1, k2, ko;
  for (uint32_t mask = 0;; ++mask) {
    mask_cluster_sizes(g, mask, o, k1, k2, ko);
    if (static_cast<double>(ko) / n < alpha) bits_[mask >> 3] |= uint8_t(1u << (mask & 7u));
    if (mask == (uint32_t{1} << m_) - 1) break;
  }
}

double conditioned_edge_prob(const graph& g, double p, int32_t o, double alpha,
                             const std::vector<int8_t>& revealed, int32_t next_edge) {
  check_cap(g, exact_cap());
  exact_dist d = exact_distribution(g, p);
  int32_t m = d.m, n = g.num_vertices;
  require(static_cast<int32_t>(revealed.size()) == m, errc::invalid_argument,
          "revealed vector must have one entry per edge");
  require(next_edge >= 0 && next_edge < m, errc::invalid_index, "edge index out of range");
  require(revealed[next_edge] == -1, errc::invalid_argument, "next_edge is already revealed");
  require(o >= 0 && o < n, errc::invalid_index, "vertex index out of range");

  uint32_t known = 0, values = 0;
  for (int32_t e = 0; e < m; ++e) {
    if (revealed[e] < 0) continue;
    known |= uint32_t{1} << e;
    if (revealed[e] > 0) values |= uint32_t{1} << e;
  }
  uint32_t free = ~known & ((uint32_t{1} << m) - 1);
  uint32_t next_bit = uint32_t{1} << next_edge;
  uint32_t free_rest = free & ~next_bit;

  // Direct marginalization: sum the event-satisfying completions with
  // next_edge open vs. all event-satisfying completions.
  kahan_sum s_open, s_total;
  int32_t k1, k2, ko;
  uint32_t sub = free_rest;
  while (true) {
    for (uint32_t next_state : {next_bit, uint32_t{0}}) {
      uint32_t mask = values | sub | next_state;
      mask_cluster_sizes(g, mask, o, k1, k2, ko);
      if (static_cast<double>(ko) / n < alpha) {
        double w = d.weight(mask);
        s_total.add(w);
        if (next_state) s_open.add(w);
      }
    }
    if (sub == 0) break;
    sub = (sub - 1) & free_rest;
  }
  require(s_total.value() > 0.0, errc::conditioning_on_null_event,
          "no completion satisfies the revealed history and the conditioning event");
  return s_open.value() / s_total.value();
}

// ---- exploration tree -------------------------------------------------------

exploration_tree::exploration_tree(const graph& g, double p, double alpha, int32_t o)
    : g_(&g), m_(g.num_edges()), o_(o), dist_(exact_distribution(g, p)), table_(g, o, alpha) {
  require(o >= 0 && o < g.num_vertices, errc::invalid_index, "vertex index out of range");

  // Total conditioning mass; the conditioned measure must exist.
  kahan_sum total;
  for (uint32_t mask = 0;; ++mask) {
    if (table_.event(mask)) total.add(dist_.weight(mask));
    if (mask == (uint32_t{1} << m_) - 1) break;
  }
  event_mass_ = total.value();
  require(event_mass_ > 0.0, errc::conditioning_on_null_event,
          "conditioning event ||K_o|| < alpha has zero probability");
  root_ = build(0, 0);
}

// Event-restricted completion mass of a partial history.
static double completion_mass(const exact_dist& d, const conditioning_table& table,
                              uint32_t free, uint32_t values) {
  kahan_sum acc;
  uint32_t sub = free;
  while (true) {
    uint32_t mask = values | sub;
    if (table.event(mask)) acc.add(d.weight(mask));
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
  return acc.value();
}

int32_t exploration_tree::build(uint32_t known, uint32_t values) {
  int32_t t = __builtin_popcount(known);
  if (t == m_) return -1;

  // Next edge rule (must match explore()): the smallest-index unrevealed edge
  // with an endpoint in o's open revealed cluster; once none exists, smallest index.
  union_find uf(g_->num_vertices);
  for (int32_t e = 0; e < m_; ++e)
    if ((known & (uint32_t{1} << e)) && (values & (uint32_t{1} << e)))
      uf.unite(g_->edges[e].first, g_->edges[e].second);
  int32_t next = -1;
  for (int32_t e = 0; e < m_; ++e) {
    if (known & (uint32_t{1} << e)) continue;
    if (uf.connected(g_->edges[e].first, o_) || uf.connected(g_->edges[e].second, o_)) {
      next = e;
      break;
    }
  }
  if (next < 0)
    for (int32_t e = 0; e < m_; ++e)
      if (!(known & (uint32_t{1} << e))) {
        next = e;
        break;
      }

  uint32_t bit = uint32_t{1} << next;
  uint32_t free_rest = ~(known | bit) & ((uint32_t{1} << m_) - 1);
  double mass_open = completion_mass(dist_, table_, free_rest, values | bit);
  double mass_closed = completion_mass(dist_, table_, free_rest, values);
  double mass = mass_open + mass_closed;

  int32_t idx = static_cast<int32_t>(nodes_.size());
  nodes_.push_back({});
  nodes_[idx].edge = next;
  nodes_[idx].p_open = mass > 0.0 ? mass_open / mass : 0.0;
  // Zero-mass branches are unreachable under P̂ (and under the coupled walk:
  // p_open = 0 can never open since U > 0, p_open = 1 can never close).
  int32_t co = mass_open > 0.0 ? build(known | bit, values | bit) : -1;
  int32_t cc = mass_closed > 0.0 ? build(known | bit, values) : -1;
  nodes_[idx].child_open = co;
  nodes_[idx].child_closed = cc;
  return idx;
}

double exploration_tree::walk_fail(int32_t idx, double reach, double q) const {
  if (idx < 0 || reach <= 0.0) return 0.0;
  const node& nd = nodes_[idx];
  if (nd.p_open < q) return reach;  // tau_fail fires here; all reached mass counts
  return walk_fail(nd.child_open, reach * nd.p_open, q) +
         walk_fail(nd.child_closed, reach * (1.0 - nd.p_open), q);
}

double exploration_tree::tau_fail_prob(double q) const { return walk_fail(root_, 1.0, q); }

double exact_tau_fail_prob(const graph& g, double p, double alpha, int32_t o,
                           std::optional<double> q_override) {
  coupling_constants_t cc = coupling_constants(g, p, alpha);
  double q;
  if (alpha > 1.0) {
    // Vacuous conditioning: P̂ = P_p; the lemma's h is replaced by 0, so
    // q = (1 - theta) p and no step can fail.
    require(cc.theta < 1.0, errc::not_applicable, "theta = 1: no usable q");
    q = (1.0 - cc.theta) * p;
  } else {
    require(cc.applicable, errc::not_applicable,
            "coupling constants not applicable (theta + h >= 1)");
    q = cc.q;
  }
  if (q_override) {
    require(*q_override <= p, errc::invalid_parameter,
            "q_override must be <= p (frontier-edge structure of the proof)");
    q = *q_override;
  }
  exploration_tree tree(g, p, alpha, o);
  return tree.tau_fail_prob(q);
}

}  // namespace percolab
