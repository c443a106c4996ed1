#pragma once

#include <string>

#include "json.hpp"
#include "percolab/coupling.hpp"
#include "percolab/estimators.hpp"
#include "percolab/exact.hpp"
#include "percolab/exploration.hpp"
#include "percolab/graph.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

// All emitters use ordered JSON and fixed key orders so identical inputs give
// byte-identical output; CSV uses 12 significant digits, '.' decimal point,
// and a fixed column order per record type.
using json = nlohmann::ordered_json;

std::string csv_num(double x);  // %.12g

// Edge-list text format: header "p <vertices> <edges>", then one "u v" line
// per edge in index order.
std::string graph_to_edgelist(const graph& g);
graph parse_edgelist(const std::string& text);

// Graph shorthand: complete(n), cycle(n), hypercube(d), torus(s1,...),
// product(spec,spec), molecular(spec,m). Errors: invalid-config.
graph parse_graph_spec(const std::string& spec);

json graph_to_json(const graph& g);
json witness_to_json(const molecular_witness& w);
json witness_report_to_json(const graph& g, const witness_report& r);
json configuration_to_json(const graph& g, const configuration& c);
json cluster_report_to_json(const cluster_report& r);
json estimate_to_json(const estimate_summary& s);
json threshold_to_json(const threshold_estimate& t);
json sweep_to_json(const graph& g, const sweep_result& s);
std::string sweep_to_csv(const sweep_result& s);
std::string threshold_to_csv(const threshold_estimate& t);
json mean_field_to_json(const mean_field_report& r);
json uniqueness_to_json(const uniqueness_report& r);
json constants_to_json(const coupling_constants_t& c);
json exact_snapshot_to_json(const graph& g, double p, double alpha, const coupling_constants_t& c,
                            double tau_fail_prob);
json outcome_to_json(const graph& g, const coupling_outcome& out);
std::string trace_to_jsonl(const exploration_trace& tr);
json domination_to_json(const domination_report_t& r);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace percolab
