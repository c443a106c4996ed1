#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace percolab {

// Witness for an m-molecular structure: a bridge edge set F whose removal
// splits the graph into m isomorphic atom blocks, plus automorphism
// generators (supplied by the constructing family) fixing F setwise.
struct molecular_witness {
  std::vector<int32_t> bridge_edges;                         // sorted edge indices (F)
  int32_t atom_count = 0;                                    // m
  std::vector<std::vector<int32_t>> atoms;                   // m vertex blocks
  std::vector<std::vector<int32_t>> automorphism_generators; // vertex permutations
  double bridge_constant = 0.0;                              // C with |F| <= C|V|
};

// Immutable finite connected regular graph with a fixed lexicographic edge
// enumeration. The edge order is part of the graph's identity: the
// exploration process reveals "the unrevealed edge of smallest index", so
// every module must agree on indices. Vertex 0 is the distinguished vertex o
// (all constructed families are vertex-transitive).
struct graph {
  int32_t num_vertices = 0;
  std::vector<std::pair<int32_t, int32_t>> edges;  // u < v, sorted lexicographically
  std::vector<std::vector<std::pair<int32_t, int32_t>>> adjacency;  // (neighbor, edge index)
  int32_t degree = 0;
  uint64_t hash = 0;  // structural hash of (num_vertices, edges), set at construction
  std::string family_tag;
  std::optional<molecular_witness> witness;
  // Automorphism generators of the family itself (used when this graph becomes
  // a molecular atom; empty for parsed graphs of unknown family).
  std::vector<std::vector<int32_t>> family_generators;

  int32_t num_edges() const { return static_cast<int32_t>(edges.size()); }
  // Index of edge {u,v} in the enumeration, or -1 if absent.
  int32_t edge_index(int32_t u, int32_t v) const;
};

graph gen_complete(int32_t n);
graph gen_cycle(int32_t n);
graph gen_hypercube(int32_t d);
graph gen_torus(const std::vector<int32_t>& side_lengths);
graph cartesian_product(const graph& a, const graph& b);
graph gen_molecular(const graph& atom, int32_t m);

struct witness_report {
  int32_t components = 0;   // components of g minus bridge edges
  bool invariant_ok = false;  // every generator is an automorphism fixing F setwise
  bool atoms_match = false;   // the components equal the witness's atom blocks
  int64_t f_size = 0;
  double density_ratio = 0.0;  // |F| / |V|
};
witness_report verify_molecular_witness(const graph& g, const molecular_witness& w);

// Spectral radius of the adjacency matrix. Regular graphs short-circuit to the
// exact degree; the generic path is shifted power iteration (A + I, which is
// primitive for connected graphs, so bipartite oscillation cannot occur).
double spectral_radius(const graph& g, double tol = 1e-9);

// Generic routine behind spectral_radius, usable on any adjacency structure.
double power_iteration_spectral_radius(
    int32_t n, const std::vector<std::vector<int32_t>>& adjacency, double tol,
    int64_t iteration_cap = 100000);

// Structural hash covering vertex count and the edge enumeration; stamped on
// configurations and serialized outputs to detect graph/config mismatches.
uint64_t graph_hash(const graph& g);

// Internal: validate invariants (connected, regular, simple) and build
// adjacency from a sorted edge list. Used by all constructors and the parser.
graph finalize_graph(int32_t num_vertices, std::vector<std::pair<int32_t, int32_t>> edges,
                     std::string family_tag);

}  // namespace percolab
