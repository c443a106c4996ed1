#include "percolab/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "percolab/error.hpp"

namespace percolab {

std::string csv_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

static json ci_to_json(const ci_t& ci) { return json::array({ci.low, ci.high}); }

static std::string hash_hex(uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- edge-list format -------------------------------------------------------

std::string graph_to_edgelist(const graph& g) {
  std::ostringstream out;
  out << "p " << g.num_vertices << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
  return out.str();
}

graph parse_edgelist(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  int64_t n = 0, m = 0;
  require(static_cast<bool>(in >> tag >> n >> m) && tag == "p", errc::invalid_argument,
          "edge list must start with a 'p <vertices> <edges>' header");
  require(n >= 1 && m >= 0, errc::invalid_argument, "edge list header out of range");
  std::vector<std::pair<int32_t, int32_t>> edges;
  edges.reserve(m);
  for (int64_t i = 0; i < m; ++i) {
    int64_t u, v;
    require(static_cast<bool>(in >> u >> v), errc::invalid_argument,
            "edge list ended before the declared edge count");
    require(u >= 0 && v >= 0 && u < n && v < n && u != v, errc::invalid_argument,
            "edge endpoints out of range");
    if (u > v) std::swap(u, v);
    edges.emplace_back(static_cast<int32_t>(u), static_cast<int32_t>(v));
  }
  std::string trailing;
  require(!(in >> trailing), errc::invalid_argument, "trailing tokens after the edge list");
  std::sort(edges.begin(), edges.end());
  return finalize_graph(static_cast<int32_t>(n), std::move(edges), "parsed");
}

// ---- graph shorthand --------------------------------------------------------

namespace {

struct spec_parser {
  const std::string& s;
  size_t pos = 0;

  explicit spec_parser(const std::string& str) : s(str) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    require(eat(c), errc::invalid_config,
            std::string("expected '") + c + "' in graph spec at position " + std::to_string(pos));
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    require(pos > start, errc::invalid_config, "expected a family name in graph spec");
    return s.substr(start, pos - start);
  }
  int64_t integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    require(pos > start, errc::invalid_config, "expected an integer in graph spec");
    return std::stoll(s.substr(start, pos - start));
  }

  graph parse() {
    std::string name = ident();
    expect('(');
    graph g;
    if (name == "complete") {
      g = gen_complete(static_cast<int32_t>(integer()));
    } else if (name == "cycle") {
      g = gen_cycle(static_cast<int32_t>(integer()));
    } else if (name == "hypercube") {
      g = gen_hypercube(static_cast<int32_t>(integer()));
    } else if (name == "torus") {
      std::vector<int32_t> sides;
      sides.push_back(static_cast<int32_t>(integer()));
      while (eat(',')) sides.push_back(static_cast<int32_t>(integer()));
      expect(')');
      return gen_torus(sides);
    } else if (name == "product") {
      graph a = parse();
      expect(',');
      graph b = parse();
      expect(')');
      return cartesian_product(a, b);
    } else if (name == "molecular") {
      graph atom = parse();
      expect(',');
      int32_t m = static_cast<int32_t>(integer());
      expect(')');
      return gen_molecular(atom, m);
    } else {
      fail(errc::invalid_config, "unknown graph family '" + name + "'");
    }
    expect(')');
    return g;
  }
};

}  // namespace

graph parse_graph_spec(const std::string& spec) {
  spec_parser parser(spec);
  graph g = parser.parse();
  parser.skip_ws();
  require(parser.pos == spec.size(), errc::invalid_config, "trailing text after graph spec");
  return g;
}

// ---- JSON emitters ----------------------------------------------------------

json graph_to_json(const graph& g) {
  json j;
  j["family"] = g.family_tag;
  j["vertices"] = g.num_vertices;
  j["edges"] = g.num_edges();
  j["degree"] = g.degree;
  j["hash"] = hash_hex(g.hash);
  if (g.witness) j["witness"] = witness_to_json(*g.witness);
  return j;
}

json witness_to_json(const molecular_witness& w) {
  json j;
  j["bridges"] = w.bridge_edges;
  j["atoms"] = w.atoms;
  j["generators"] = w.automorphism_generators;
  j["atom_count"] = w.atom_count;
  j["bridge_constant"] = w.bridge_constant;
  return j;
}

json witness_report_to_json(const graph& g, const witness_report& r) {
  json j;
  j["components"] = r.components;
  j["invariant_ok"] = r.invariant_ok;
  j["atoms_match"] = r.atoms_match;
  j["f_size"] = r.f_size;
  j["density_ratio"] = json::array({r.f_size, g.num_vertices});
  j["density_ratio_real"] = r.density_ratio;
  return j;
}

json configuration_to_json(const graph& g, const configuration& c) {
  std::string bits(c.open_edges.size(), '0');
  for (size_t e = 0; e < c.open_edges.size(); ++e)
    if (c.open_edges[e]) bits[e] = '1';
  json j;
  j["graph"] = g.family_tag;
  j["hash"] = hash_hex(c.graph_id);
  j["bits"] = bits;
  return j;
}

json cluster_report_to_json(const cluster_report& r) {
  json j;
  j["cluster_sizes"] = r.cluster_sizes;
  j["density_k1"] = r.density_k1;
  j["density_k2"] = r.density_k2;
  j["density_o"] = r.density_o;
  j["cluster_of"] = r.cluster_of;
  return j;
}

json estimate_to_json(const estimate_summary& s) {
  json j;
  j["p"] = s.p;
  j["reps"] = s.reps;
  j["seed"] = s.seed;
  j["alpha"] = s.alpha;
  j["beta"] = s.beta;
  j["mean_k1"] = s.mean_k1;
  j["mean_k1_ci"] = ci_to_json(s.mean_k1_ci);
  j["mean_k2"] = s.mean_k2;
  j["mean_k2_ci"] = ci_to_json(s.mean_k2_ci);
  j["prob_k1_geq_alpha"] = s.prob_k1_geq_alpha;
  j["prob_k1_ci"] = ci_to_json(s.prob_k1_ci);
  j["prob_k2_geq_beta"] = s.prob_k2_geq_beta;
  j["prob_k2_ci"] = ci_to_json(s.prob_k2_ci);
  return j;
}

json threshold_to_json(const threshold_estimate& t) {
  json j;
  j["value"] = t.value;
  j["ci_low"] = t.ci_low;
  j["ci_high"] = t.ci_high;
  j["method"] = t.method;
  j["delta"] = t.delta;
  j["reps"] = t.reps;
  j["seed"] = t.seed;
  j["level"] = t.level;
  j["budget_capped"] = t.budget_capped;
  return j;
}

static json sweep_row_to_json(const sweep_row& r) {
  json j;
  j["p"] = r.p;
  j["prob_k1_geq_alpha"] = r.prob_k1_geq_alpha;
  j["prob_k1_ci"] = ci_to_json(r.prob_k1_ci);
  j["mean_k1"] = r.mean_k1;
  j["mean_k1_ci"] = ci_to_json(r.mean_k1_ci);
  j["mean_k2"] = r.mean_k2;
  j["mean_k2_ci"] = ci_to_json(r.mean_k2_ci);
  j["prob_k2_geq_beta"] = r.prob_k2_geq_beta;
  j["prob_k2_ci"] = ci_to_json(r.prob_k2_ci);
  return j;
}

json sweep_to_json(const graph& g, const sweep_result& s) {
  json j;
  j["graph"] = g.family_tag;
  j["alpha"] = s.alpha;
  j["beta"] = s.beta;
  j["reps"] = s.reps;
  j["seed"] = s.seed;
  json rows = json::array();
  for (const sweep_row& r : s.grid) rows.push_back(sweep_row_to_json(r));
  j["grid"] = rows;
  return j;
}

std::string sweep_to_csv(const sweep_result& s) {
  std::ostringstream out;
  out << "p,prob_k1_geq_alpha,prob_k1_lo,prob_k1_hi,mean_k1,mean_k1_lo,mean_k1_hi,"
         "mean_k2,mean_k2_lo,mean_k2_hi,prob_k2_geq_beta,prob_k2_lo,prob_k2_hi\n";
  for (const sweep_row& r : s.grid) {
    out << csv_num(r.p) << ',' << csv_num(r.prob_k1_geq_alpha) << ',' << csv_num(r.prob_k1_ci.low)
        << ',' << csv_num(r.prob_k1_ci.high) << ',' << csv_num(r.mean_k1) << ','
        << csv_num(r.mean_k1_ci.low) << ',' << csv_num(r.mean_k1_ci.high) << ','
        << csv_num(r.mean_k2) << ',' << csv_num(r.mean_k2_ci.low) << ','
        << csv_num(r.mean_k2_ci.high) << ',' << csv_num(r.prob_k2_geq_beta) << ','
        << csv_num(r.prob_k2_ci.low) << ',' << csv_num(r.prob_k2_ci.high) << '\n';
  }
  return out.str();
}

std::string threshold_to_csv(const threshold_estimate& t) {
  std::ostringstream out;
  out << "value,ci_low,ci_high,method,delta,reps,seed,level,budget_capped\n";
  out << csv_num(t.value) << ',' << csv_num(t.ci_low) << ',' << csv_num(t.ci_high) << ','
      << t.method << ',' << csv_num(t.delta) << ',' << t.reps << ',' << t.seed << ','
      << csv_num(t.level) << ',' << (t.budget_capped ? 1 : 0) << '\n';
  return out.str();
}

json mean_field_to_json(const mean_field_report& r) {
  json j;
  j["p"] = r.p;
  j["epsilon"] = r.epsilon;
  j["lhs"] = r.lhs;
  j["lhs_stderr"] = r.lhs_stderr;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["baseline_mean_k1"] = r.baseline_mean_k1;
  j["pass"] = r.pass;
  j["reps"] = r.reps;
  j["seed"] = r.seed;
  return j;
}

json uniqueness_to_json(const uniqueness_report& r) {
  json j;
  j["p"] = r.p;
  j["beta"] = r.beta;
  j["freq"] = r.freq;
  j["ci"] = ci_to_json(r.ci);
  j["reps"] = r.reps;
  j["seed"] = r.seed;
  return j;
}

json constants_to_json(const coupling_constants_t& c) {
  json j;
  j["p"] = c.p;
  j["alpha"] = c.alpha;
  j["theta"] = c.theta;
  j["h"] = c.h;
  j["delta"] = c.delta;  // NaN serializes as null when not applicable
  j["q"] = c.q;
  j["applicable"] = c.applicable;
  return j;
}

json exact_snapshot_to_json(const graph& g, double p, double alpha, const coupling_constants_t& c,
                            double tau_fail_prob) {
  json j;
  j["graph"] = g.family_tag;
  j["p"] = p;
  j["alpha"] = alpha;
  j["theta"] = c.theta;
  j["h"] = c.h;
  j["delta"] = c.delta;
  j["q"] = c.q;
  j["tau_fail_prob"] = tau_fail_prob;
  return j;
}

json outcome_to_json(const graph& g, const coupling_outcome& out) {
  json j;
  j["graph"] = g.family_tag;
  j["q_used"] = out.q_used;
  j["error_event_A"] = out.error_event_A;
  j["monotone_ok"] = out.monotone_ok;
  j["tau_fail"] = out.trace.tau_fail;
  j["tau_moat"] = out.trace.tau_moat;
  if (out.trace.v_minus >= 0) {
    j["v_minus"] = out.trace.v_minus;
    j["v_plus"] = out.trace.v_plus;
  }
  j["omega_hat"] = configuration_to_json(g, out.omega_hat);
  j["omega_q"] = configuration_to_json(g, out.omega_q);
  return j;
}

std::string trace_to_jsonl(const exploration_trace& tr) {
  std::ostringstream out;
  for (size_t t = 0; t < tr.order.size(); ++t) {
    json j;
    j["step"] = t + 1;
    j["edge"] = tr.order[t];
    j["state"] = static_cast<int>(tr.states[t]);
    j["eligible_frontier_size"] = tr.frontier_sizes[t];
    out << j.dump() << '\n';
  }
  return out.str();
}

json domination_to_json(const domination_report_t& r) {
  json j;
  j["p"] = r.p;
  j["alpha"] = r.alpha;
  j["theta"] = r.theta;
  j["h"] = r.h;
  j["delta"] = r.delta;
  j["q"] = r.q;
  j["freq_A"] = r.freq_A;
  j["h_sqrt"] = r.bound_h_sqrt;
  j["n_runs"] = r.reps;
  j["seed"] = r.seed;
  j["vacuous"] = r.vacuous;
  if (r.q_override) j["q_override"] = *r.q_override;
  j["exact_fail_prob"] = r.exact_fail_prob;
  j["freq_bound_ok"] = r.freq_bound_ok;
  j["freq_matches_exact"] = r.freq_matches_exact;
  j["monotone_all"] = r.monotone_all;
  j["marginals_ok"] = r.marginals_ok;
  json marg = json::array();
  for (const edge_marginal& em : r.marginals) {
    json e;
    e["edge"] = em.edge;
    e["freq_union"] = em.freq_union;
    e["freq_q"] = em.freq_q;
    e["ok"] = em.ok;
    marg.push_back(e);
  }
  j["marginals"] = marg;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), errc::io_error, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  require(out.good(), errc::io_error, "write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::io_error, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace percolab
