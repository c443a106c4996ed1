// percolab — batch experiment runner for the percolation laboratory.
//
// Subcommands: gen, sample, sweep, threshold, bounds, couple, exact,
// molecular, suite. Every run is driven by an optional JSON config
// (--config) plus direct flags; flags win over config values. Identical
// config + seed produce byte-identical output files regardless of --threads.
// Errors are machine-readable: {"code": ..., "message": ...} on stdout,
// exit 1.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "percolab/error.hpp"
#include "percolab/io.hpp"
#include "percolab/suites.hpp"

namespace {

using percolab::errc;
using percolab::fail;
using percolab::graph;
using percolab::json;
using percolab::require;

// ---- config plumbing ---------------------------------------------------------

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::string text = percolab::read_text_file(path);
  json cfg;
  try {
    cfg = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::invalid_config, std::string("config is not valid JSON: ") + e.what());
  }
  require(cfg.is_object(), errc::invalid_config, "config root must be a JSON object");
  return cfg;
}

void check_keys(const json& cfg, std::initializer_list<const char*> extra) {
  static const char* common[] = {"graph", "graph_file", "op",  "seed",
                                 "reps",  "threads",    "out", "format"};
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    const std::string& k = it.key();
    bool ok = false;
    for (const char* a : common) ok = ok || k == a;
    for (const char* a : extra) ok = ok || k == a;
    require(ok, errc::invalid_config, "unknown config key '" + k + "'");
  }
}

double cfg_num(const json& cfg, const char* key) {
  require(cfg.at(key).is_number(), errc::invalid_config,
          std::string("config key '") + key + "' must be a number");
  return cfg.at(key).get<double>();
}

int64_t cfg_int(const json& cfg, const char* key) {
  require(cfg.at(key).is_number_integer(), errc::invalid_config,
          std::string("config key '") + key + "' must be an integer");
  return cfg.at(key).get<int64_t>();
}

std::string cfg_str(const json& cfg, const char* key) {
  require(cfg.at(key).is_string(), errc::invalid_config,
          std::string("config key '") + key + "' must be a string");
  return cfg.at(key).get<std::string>();
}

// Per-run option bag shared by all subcommands. Flag values (when the flag was
// actually given) override config values, which override defaults.
struct run_opts {
  CLI::App* sub = nullptr;
  json cfg;

  std::string config_path, graph_spec, out_path, format_flag, op_flag;
  uint64_t seed_flag = 0;
  int64_t reps_flag = 0;
  int threads_flag = 1;

  bool given(const std::string& flag) const {
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  }

  uint64_t seed(uint64_t def = 0) const {
    if (given("--seed")) return seed_flag;
    if (cfg.contains("seed")) {
      require(cfg.at("seed").is_number_integer() && cfg.at("seed").get<int64_t>() >= 0,
              errc::invalid_config, "config key 'seed' must be a non-negative integer");
      return cfg.at("seed").get<uint64_t>();
    }
    return def;
  }
  int64_t reps(int64_t def) const {
    if (given("--reps")) return reps_flag;
    if (cfg.contains("reps")) return cfg_int(cfg, "reps");
    return def;
  }
  int threads() const {
    if (given("--threads")) return threads_flag;
    if (cfg.contains("threads")) return static_cast<int>(cfg_int(cfg, "threads"));
    return 1;
  }
  std::string op(const std::string& def) const {
    if (given("--op")) return op_flag;
    if (cfg.contains("op")) return cfg_str(cfg, "op");
    return def;
  }
  std::string out() const {
    if (!out_path.empty()) return out_path;
    if (cfg.contains("out")) return cfg_str(cfg, "out");
    return "";
  }
  std::string format() const {
    std::string f = "json";
    if (!format_flag.empty())
      f = format_flag;
    else if (cfg.contains("format"))
      f = cfg_str(cfg, "format");
    require(f == "json" || f == "csv", errc::invalid_config,
            "format must be 'json' or 'csv', got '" + f + "'");
    return f;
  }

  graph resolve_graph() const {
    if (!graph_spec.empty()) return percolab::parse_graph_spec(graph_spec);
    if (cfg.contains("graph")) return percolab::parse_graph_spec(cfg_str(cfg, "graph"));
    if (cfg.contains("graph_file"))
      return percolab::parse_edgelist(percolab::read_text_file(cfg_str(cfg, "graph_file")));
    fail(errc::invalid_config, "no graph given (use --graph, or 'graph'/'graph_file' in config)");
  }

  // Numeric op parameter: flag (stored in *flag_val when given) > config > default.
  std::optional<double> num_param(const char* flag, const double* flag_val,
                                  const char* key) const {
    if (flag_val != nullptr && given(flag)) return *flag_val;
    if (cfg.contains(key)) return cfg_num(cfg, key);
    return std::nullopt;
  }
  double need_param(const char* flag, const double* flag_val, const char* key) const {
    std::optional<double> v = num_param(flag, flag_val, key);
    require(v.has_value(), errc::invalid_config,
            std::string("missing required parameter '") + key + "'");
    return *v;
  }
};

void check_op(const run_opts& o, const std::string& def,
              std::initializer_list<const char*> known) {
  std::string op = o.op(def);
  for (const char* k : known)
    if (op == k) return;
  fail(errc::unknown_operation, "operation '" + op + "' is not provided by this subcommand");
}

// ---- output ------------------------------------------------------------------

void emit(const run_opts& o, const std::string& text) {
  std::string body = (!text.empty() && text.back() == '\n') ? text : text + "\n";
  std::string path = o.out();
  if (path.empty())
    std::fwrite(body.data(), 1, body.size(), stdout);
  else
    percolab::write_text_file(path, body);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Generic two-column key,value CSV for scalar reports; nested objects flatten
// to dotted paths, arrays/objects below that are embedded as quoted JSON.
void kv_rows(const json& j, const std::string& prefix, std::string& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const json& v = it.value();
    if (v.is_object() && !v.empty()) {
      kv_rows(v, key, out);
    } else if (v.is_number_float()) {
      out += key + "," + percolab::csv_num(v.get<double>()) + "\n";
    } else {
      out += key + "," + csv_quote(v.dump()) + "\n";
    }
  }
}

std::string kv_csv(const json& j) {
  std::string out = "key,value\n";
  kv_rows(j, "", out);
  return out;
}

// ---- subcommand handlers -------------------------------------------------------

int cmd_gen(const run_opts& o) {
  check_keys(o.cfg, {});
  check_op(o, "gen", {"gen"});
  graph g = o.resolve_graph();
  // csv selects the plain-text edge-list interchange format
  emit(o, o.format() == "csv" ? percolab::graph_to_edgelist(g) : dump(percolab::graph_to_json(g)));
  return 0;
}

int cmd_sample(const run_opts& o, const double* p_flag, const int64_t* replica_flag) {
  check_keys(o.cfg, {"p", "replica"});
  check_op(o, "sample", {"sample"});
  graph g = o.resolve_graph();
  double p = o.need_param("--p", p_flag, "p");
  uint64_t replica = 0;
  if (o.given("--replica"))
    replica = static_cast<uint64_t>(*replica_flag);
  else if (o.cfg.contains("replica"))
    replica = static_cast<uint64_t>(cfg_int(o.cfg, "replica"));
  uint64_t seed = o.seed();

  percolab::configuration c = percolab::sample(g, p, seed, replica);
  percolab::cluster_report rep = percolab::clusters(g, c);
  if (o.format() == "csv") {
    std::string out = "edge,u,v,open\n";
    for (int32_t e = 0; e < g.num_edges(); ++e)
      out += std::to_string(e) + "," + std::to_string(g.edges[e].first) + "," +
             std::to_string(g.edges[e].second) + "," + (c.open(e) ? "1" : "0") + "\n";
    emit(o, out);
    return 0;
  }
  json j;
  j["graph"] = percolab::graph_to_json(g);
  j["p"] = p;
  j["seed"] = seed;
  j["replica"] = replica;
  j["configuration"] = percolab::configuration_to_json(g, c);
  j["clusters"] = percolab::cluster_report_to_json(rep);
  emit(o, dump(j));
  return 0;
}

int cmd_sweep(const run_opts& o, const std::vector<double>& p_flag, const double* alpha_flag,
              const double* beta_flag) {
  check_keys(o.cfg, {"p_grid", "alpha", "beta"});
  check_op(o, "sweep", {"sweep"});
  graph g = o.resolve_graph();
  std::vector<double> grid = p_flag;
  if (grid.empty() && o.cfg.contains("p_grid")) {
    require(o.cfg.at("p_grid").is_array(), errc::invalid_config, "'p_grid' must be an array");
    for (const json& v : o.cfg.at("p_grid")) {
      require(v.is_number(), errc::invalid_config, "'p_grid' entries must be numbers");
      grid.push_back(v.get<double>());
    }
  }
  require(!grid.empty(), errc::invalid_config, "missing required parameter 'p_grid'");
  double alpha = o.num_param("--alpha", alpha_flag, "alpha").value_or(0.5);
  double beta = o.num_param("--beta", beta_flag, "beta").value_or(0.25);
  percolab::sweep_result s =
      percolab::sweep(g, grid, alpha, beta, o.reps(1000), o.seed(), o.threads());
  emit(o, o.format() == "csv" ? percolab::sweep_to_csv(s) : dump(percolab::sweep_to_json(g, s)));
  return 0;
}

int cmd_threshold(const run_opts& o, const double* delta_flag, const double* tol_flag,
                  const double* level_flag) {
  check_keys(o.cfg, {"delta", "tol", "level"});
  check_op(o, "empirical_threshold", {"empirical_threshold", "spectral_threshold"});
  graph g = o.resolve_graph();
  percolab::threshold_estimate t;
  if (o.op("empirical_threshold") == "spectral_threshold") {
    t = percolab::spectral_threshold(g);
  } else {
    double delta = o.need_param("--delta", delta_flag, "delta");
    double tol = o.num_param("--tol", tol_flag, "tol").value_or(1e-4);
    double level = o.num_param("--level", level_flag, "level").value_or(0.5);
    t = percolab::empirical_threshold(g, delta, o.reps(1000), tol, o.seed(), o.threads(), level);
  }
  emit(o, o.format() == "csv" ? percolab::threshold_to_csv(t) : dump(percolab::threshold_to_json(t)));
  return 0;
}

int cmd_bounds(const run_opts& o, const double* delta_flag, const double* tol_flag,
               const double* level_flag) {
  check_keys(o.cfg, {"delta", "tol", "level"});
  check_op(o, "bounds", {"bounds"});
  graph g = o.resolve_graph();
  auto [lower, upper] = percolab::degree_bounds(g);
  percolab::threshold_estimate sp = percolab::spectral_threshold(g);
  json j;
  j["graph"] = percolab::graph_to_json(g);
  j["lower_bound"] = lower;
  j["upper_bound"] = upper;
  j["spectral"] = percolab::threshold_to_json(sp);
  std::optional<double> delta = o.num_param("--delta", delta_flag, "delta");
  if (delta) {
    double tol = o.num_param("--tol", tol_flag, "tol").value_or(1e-4);
    double level = o.num_param("--level", level_flag, "level").value_or(0.5);
    percolab::threshold_estimate est =
        percolab::empirical_threshold(g, *delta, o.reps(500), tol, o.seed(), o.threads(), level);
    j["estimate"] = percolab::threshold_to_json(est);
    j["ordering_ok"] = est.ci_high >= lower && est.ci_low <= upper;
    j["spectral_ratio"] = sp.value / est.value;
  }
  emit(o, o.format() == "csv" ? kv_csv(j) : dump(j));
  return 0;
}

int cmd_couple(const run_opts& o, const double* p_flag, const double* alpha_flag,
               const double* q_flag, const int64_t* replica_flag) {
  check_keys(o.cfg, {"p", "alpha", "q_override", "replica"});
  check_op(o, "domination_report", {"domination_report", "run_coupling", "trace"});
  graph g = o.resolve_graph();
  double p = o.need_param("--p", p_flag, "p");
  double alpha = o.need_param("--alpha", alpha_flag, "alpha");
  std::optional<double> q = o.num_param("--q", q_flag, "q_override");
  std::string op = o.op("domination_report");

  if (op == "domination_report") {
    percolab::domination_report_t rep =
        percolab::domination_report(g, p, alpha, 0, o.reps(10000), o.seed(), q);
    json j = percolab::domination_to_json(rep);
    emit(o, o.format() == "csv" ? kv_csv(j) : dump(j));
    return 0;
  }
  uint64_t replica = 0;
  if (o.given("--replica"))
    replica = static_cast<uint64_t>(*replica_flag);
  else if (o.cfg.contains("replica"))
    replica = static_cast<uint64_t>(cfg_int(o.cfg, "replica"));
  percolab::coupling_session sess(g, p, alpha, 0, q);
  percolab::coupling_outcome out = sess.run(o.seed(), replica);
  if (op == "trace") {
    // exploration trace of omega_hat as JSON lines, independent of --format
    emit(o, percolab::trace_to_jsonl(out.trace));
    return 0;
  }
  json j = percolab::outcome_to_json(g, out);
  emit(o, o.format() == "csv" ? kv_csv(j) : dump(j));
  return 0;
}

int cmd_exact(const run_opts& o, const double* p_flag, const double* alpha_flag,
              const double* q_flag) {
  check_keys(o.cfg, {"p", "alpha", "q_override"});
  check_op(o, "exact_distribution", {"exact_distribution"});
  graph g = o.resolve_graph();
  double p = o.need_param("--p", p_flag, "p");
  std::optional<double> alpha = o.num_param("--alpha", alpha_flag, "alpha");
  std::optional<double> q = o.num_param("--q", q_flag, "q_override");
  require(!q || alpha, errc::invalid_config, "'q_override' requires 'alpha'");

  json j;
  j["graph"] = percolab::graph_to_json(g);
  j["p"] = p;
  j["num_configs"] = uint64_t{1} << g.num_edges();
  j["theta"] = percolab::exact_theta(g, p);
  j["prob_connected"] = percolab::exact_prob_connected(g, p);
  if (alpha) {
    percolab::coupling_constants_t cc = percolab::coupling_constants(g, p, *alpha);
    j["alpha"] = *alpha;
    j["constants"] = percolab::constants_to_json(cc);
    bool vacuous_ok = *alpha > 1.0 && cc.theta < 1.0;
    if (cc.applicable || vacuous_ok || q) {
      j["tau_fail_prob"] = percolab::exact_tau_fail_prob(g, p, *alpha, 0, q);
      if (q) j["q_override"] = *q;
    } else {
      j["tau_fail_prob"] = nullptr;  // lemma inapplicable at these (p, alpha)
    }
  }
  emit(o, o.format() == "csv" ? kv_csv(j) : dump(j));
  return 0;
}

int cmd_molecular(const run_opts& o, const double* p_flag, const double* beta_flag) {
  check_keys(o.cfg, {"p", "beta"});
  check_op(o, "molecular", {"molecular"});
  graph g = o.resolve_graph();
  require(g.witness.has_value(), errc::not_applicable,
          "graph carries no molecular witness (build it with molecular(atom, m))");
  percolab::witness_report rep = percolab::verify_molecular_witness(g, *g.witness);
  json j;
  j["graph"] = percolab::graph_to_json(g);
  j["witness_report"] = percolab::witness_report_to_json(g, rep);
  std::optional<double> p = o.num_param("--p", p_flag, "p");
  std::optional<double> beta = o.num_param("--beta", beta_flag, "beta");
  require(p.has_value() == beta.has_value(), errc::invalid_config,
          "uniqueness profile needs both 'p' and 'beta'");
  if (p) {
    j["uniqueness"] = percolab::uniqueness_to_json(
        percolab::uniqueness_profile(g, *p, *beta, o.reps(4000), o.seed(), o.threads()));
  }
  emit(o, o.format() == "csv" ? kv_csv(j) : dump(j));
  return 0;
}

int cmd_suite(const run_opts& o, const std::string& name_arg) {
  check_keys(o.cfg, {"name"});
  check_op(o, "suite", {"suite"});
  std::string name = name_arg;
  if (name.empty() && o.cfg.contains("name")) name = cfg_str(o.cfg, "name");
  require(!name.empty(), errc::invalid_config, "missing suite name");
  percolab::suite_result r = name == "properties" ? percolab::run_property_battery(o.threads())
                                                  : percolab::run_suite(name, o.threads());
  if (o.format() == "csv") {
    std::string out = "criterion,name,pass,detail\n";
    for (const percolab::suite_check& c : r.checks)
      out += std::to_string(c.criterion) + "," + csv_quote(c.name) + "," +
             (c.pass ? "1" : "0") + "," + csv_quote(c.detail) + "\n";
    emit(o, out);
  } else {
    emit(o, dump(percolab::suite_to_json(r)));
  }
  return r.pass ? 0 : 1;
}

void add_common(CLI::App* sub, run_opts& o) {
  o.sub = sub;
  sub->add_option("--config", o.config_path, "JSON experiment config file");
  sub->add_option("-g,--graph", o.graph_spec,
                  "graph spec: complete(n) | cycle(n) | hypercube(d) | torus(s1,...) | "
                  "product(spec,spec) | molecular(spec,m)");
  sub->add_option("--seed", o.seed_flag, "RNG seed");
  sub->add_option("--reps", o.reps_flag, "Monte Carlo replicas");
  sub->add_option("--threads", o.threads_flag, "worker threads (never changes results)");
  sub->add_option("--out", o.out_path, "output file (default: stdout)");
  sub->add_option("--format", o.format_flag, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percolab — a laboratory for percolation on finite transitive graphs"};
  app.set_version_flag("--version", "percolab 1.0.0");
  app.require_subcommand(0, 1);

  run_opts o[9];
  double p_flag = 0, alpha_flag = 0, beta_flag = 0, q_flag = 0, delta_flag = 0, tol_flag = 0,
         level_flag = 0;
  int64_t replica_flag = 0;
  std::vector<double> p_grid_flag;
  std::string suite_name;

  CLI::App* gen = app.add_subcommand("gen", "construct a graph and emit it");
  add_common(gen, o[0]);

  CLI::App* sample = app.add_subcommand("sample", "draw one configuration and its clusters");
  add_common(sample, o[1]);
  sample->add_option("--p", p_flag, "edge probability");
  sample->add_option("--replica", replica_flag, "replica index");

  CLI::App* sweep = app.add_subcommand("sweep", "estimate observables over a p grid");
  add_common(sweep, o[2]);
  sweep->add_option("--p", p_grid_flag, "grid point (repeatable)");
  sweep->add_option("--alpha", alpha_flag, "density threshold for K_1 frequency");
  sweep->add_option("--beta", beta_flag, "density threshold for K_2 frequency");

  CLI::App* threshold = app.add_subcommand("threshold", "locate the density-delta threshold");
  add_common(threshold, o[3]);
  threshold->add_option("--op", o[3].op_flag, "empirical_threshold | spectral_threshold");
  threshold->add_option("--delta", delta_flag, "target density");
  threshold->add_option("--tol", tol_flag, "bisection tolerance");
  threshold->add_option("--level", level_flag, "frequency level the bisection targets");

  CLI::App* bounds = app.add_subcommand("bounds", "degree/spectral threshold bounds");
  add_common(bounds, o[4]);
  bounds->add_option("--delta", delta_flag, "also locate the empirical threshold at this delta");
  bounds->add_option("--tol", tol_flag, "bisection tolerance");
  bounds->add_option("--level", level_flag, "frequency level the bisection targets");

  CLI::App* couple = app.add_subcommand("couple", "conditioned coupling experiments");
  add_common(couple, o[5]);
  couple->add_option("--op", o[5].op_flag, "domination_report | run_coupling | trace");
  couple->add_option("--p", p_flag, "edge probability");
  couple->add_option("--alpha", alpha_flag, "conditioning density");
  couple->add_option("--q", q_flag, "diagnostic q override (must be <= p)");
  couple->add_option("--replica", replica_flag, "replica index (run_coupling/trace)");

  CLI::App* exact = app.add_subcommand("exact", "exact enumeration snapshot");
  add_common(exact, o[6]);
  exact->add_option("--p", p_flag, "edge probability");
  exact->add_option("--alpha", alpha_flag, "conditioning density (optional)");
  exact->add_option("--q", q_flag, "diagnostic q override (must be <= p)");

  CLI::App* molecular = app.add_subcommand("molecular", "verify a molecular witness");
  add_common(molecular, o[7]);
  molecular->add_option("--p", p_flag, "uniqueness profile edge probability");
  molecular->add_option("--beta", beta_flag, "uniqueness density threshold");

  CLI::App* suite = app.add_subcommand("suite", "run a named acceptance battery");
  add_common(suite, o[8]);
  suite->add_option("name", suite_name, "coupling | thresholds | molecular | bounds | properties");

  try {
    app.parse(argc, argv);
    CLI::App* subs[] = {gen, sample, sweep, threshold, bounds, couple, exact, molecular, suite};
    int which = -1;
    for (int i = 0; i < 9; ++i)
      if (subs[i]->parsed()) which = i;
    if (which < 0) fail(errc::invalid_config, "a subcommand is required (see --help)");
    run_opts& ro = o[which];
    ro.cfg = load_config(ro.config_path);
    switch (which) {
      case 0: return cmd_gen(ro);
      case 1: return cmd_sample(ro, &p_flag, &replica_flag);
      case 2: return cmd_sweep(ro, p_grid_flag, &alpha_flag, &beta_flag);
      case 3: return cmd_threshold(ro, &delta_flag, &tol_flag, &level_flag);
      case 4: return cmd_bounds(ro, &delta_flag, &tol_flag, &level_flag);
      case 5: return cmd_couple(ro, &p_flag, &alpha_flag, &q_flag, &replica_flag);
      case 6: return cmd_exact(ro, &p_flag, &alpha_flag, &q_flag);
      case 7: return cmd_molecular(ro, &p_flag, &beta_flag);
      case 8: return cmd_suite(ro, suite_name);
    }
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ExtrasError& e) {
    json err;
    err["code"] = "unknown-operation";
    err["message"] = e.what();
    std::puts(err.dump().c_str());
    return 1;
  } catch (const CLI::ParseError& e) {
    json err;
    err["code"] = "invalid-config";
    err["message"] = e.what();
    std::puts(err.dump().c_str());
    return 1;
  } catch (const percolab::error& e) {
    json err;
    err["code"] = percolab::errc_name(e.code());
    err["message"] = e.what();
    std::puts(err.dump().c_str());
    return 1;
  } catch (const std::exception& e) {
    json err;
    err["code"] = "internal-invariant-violation";
    err["message"] = e.what();
    std::puts(err.dump().c_str());
    return 1;
  }
}
