#include "percolab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "percolab/error.hpp"
#include "percolab/rng.hpp"
#include "percolab/union_find.hpp"

namespace percolab {

int32_t graph::edge_index(int32_t u, int32_t v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
  if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int32_t>(it - edges.begin());
}

graph finalize_graph(int32_t num_vertices, std::vector<std::pair<int32_t, int32_t>> edges,
                     std::string family_tag) {
  require(num_vertices >= 1, errc::invalid_parameter, "graph needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
    require(u != v, errc::invalid_argument, "self-loop in edge list");
    require(u >= 0 && v < num_vertices, errc::invalid_index, "edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(),
          errc::invalid_argument, "parallel edge in edge list");

  graph g;
  g.num_vertices = num_vertices;
  g.edges = std::move(edges);
  g.family_tag = std::move(family_tag);
  g.adjacency.assign(num_vertices, {});
  for (int32_t e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edges[e];
    g.adjacency[u].push_back({v, e});
    g.adjacency[v].push_back({u, e});
  }

  // Regularity (all constructed families are vertex-transitive, hence regular).
  g.degree = static_cast<int32_t>(g.adjacency[0].size());
  for (const auto& nbrs : g.adjacency)
    require(static_cast<int32_t>(nbrs.size()) == g.degree, errc::invalid_argument,
            "graph is not regular");

  // Connectivity.
  std::vector<char> seen(num_vertices, 0);
  std::queue<int32_t> bfs;
  bfs.push(0);
  seen[0] = 1;
  int32_t reached = 1;
  while (!bfs.empty()) {
    int32_t v = bfs.front();
    bfs.pop();
    for (auto [w, e] : g.adjacency[v]) {
      (void)e;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        bfs.push(w);
      }
    }
  }
  require(reached == num_vertices, errc::invalid_argument, "graph is not connected");

  uint64_t h = rng::mix64(0x70657263ULL ^ static_cast<uint64_t>(g.num_vertices));
  for (auto [u, v] : g.edges)
    h = rng::mix64(h ^ ((static_cast<uint64_t>(u) << 32) | static_cast<uint32_t>(v)));
  g.hash = h;
  return g;
}

graph gen_complete(int32_t n) {
  require(n >= 2, errc::invalid_parameter, "gen_complete requires n >= 2");
  std::vector<std::pair<int32_t, int32_t>> edges;
  edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int32_t u = 0; u < n; ++u)
    for (int32_t v = u + 1; v < n; ++v) edges.push_back({u, v});
  graph g = finalize_graph(n, std::move(edges), "complete(" + std::to_string(n) + ")");
  std::vector<int32_t> transpose(n), cycle(n);
  std::iota(transpose.begin(), transpose.end(), 0);
  std::swap(transpose[0], transpose[1]);
  for (int32_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  g.family_generators = {transpose, cycle};
  return g;
}

graph gen_cycle(int32_t n) {
  require(n >= 3, errc::invalid_parameter, "gen_cycle requires n >= 3");
  std::vector<std::pair<int32_t, int32_t>> edges;
  for (int32_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  graph g = finalize_graph(n, std::move(edges), "cycle(" + std::to_string(n) + ")");
  std::vector<int32_t> rot(n);
  for (int32_t i = 0; i < n; ++i) rot[i] = (i + 1) % n;
  g.family_generators = {rot};
  return g;
}

graph gen_hypercube(int32_t d) {
  require(d >= 1, errc::invalid_parameter, "gen_hypercube requires d >= 1");
  require(d <= 28, errc::capacity_exceeded, "hypercube dimension too large");
  int32_t n = 1 << d;
  std::vector<std::pair<int32_t, int32_t>> edges;
  edges.reserve(static_cast<size_t>(d) << (d - 1));
  for (int32_t v = 0; v < n; ++v)
    for (int32_t b = 0; b < d; ++b) {
      int32_t w = v ^ (1 << b);
      if (v < w) edges.push_back({v, w});
    }
  graph g = finalize_graph(n, std::move(edges), "hypercube(" + std::to_string(d) + ")");
  std::vector<int32_t> flip(n), rotate(n);
  for (int32_t v = 0; v < n; ++v) {
    flip[v] = v ^ 1;
    rotate[v] = d == 1 ? v : (((v << 1) | (v >> (d - 1))) & (n - 1));
  }
  g.family_generators = {flip, rotate};
  return g;
}

graph gen_torus(const std::vector<int32_t>& side_lengths) {
  require(!side_lengths.empty(), errc::invalid_parameter, "gen_torus requires >= 1 dimension");
  int64_t n64 = 1;
  for (int32_t s : side_lengths) {
    require(s >= 3, errc::invalid_parameter, "gen_torus requires side lengths >= 3");
    n64 *= s;
    require(n64 <= (1 << 24), errc::capacity_exceeded, "torus too large");
  }
  int32_t n = static_cast<int32_t>(n64);
  int32_t dims = static_cast<int32_t>(side_lengths.size());

  // Row-major mixed-radix index; stride of dimension k.
  std::vector<int64_t> stride(dims, 1);
  for (int32_t k = dims - 2; k >= 0; --k) stride[k] = stride[k + 1] * side_lengths[k + 1];

  std::vector<std::pair<int32_t, int32_t>> edges;
  std::vector<int32_t> coord(dims, 0);
  for (int32_t v = 0; v < n; ++v) {
    for (int32_t k = 0; k < dims; ++k) {
      int32_t up = (coord[k] + 1) % side_lengths[k];
      int32_t w = v + static_cast<int32_t>((up - coord[k]) * stride[k]);
      edges.push_back({std::min(v, w), std::max(v, w)});
    }
    for (int32_t k = dims - 1; k >= 0; --k) {
      if (++coord[k] < side_lengths[k]) break;
      coord[k] = 0;
    }
  }
  std::string tag = "torus(";
  for (size_t i = 0; i < side_lengths.size(); ++i)
    tag += (i ? "," : "") + std::to_string(side_lengths[i]);
  tag += ")";
  graph g = finalize_graph(n, std::move(edges), std::move(tag));

  // One rotation generator per dimension.
  for (int32_t k = 0; k < dims; ++k) {
    std::vector<int32_t> rot(n);
    for (int32_t v = 0; v < n; ++v) {
      int32_t ck = static_cast<int32_t>((v / stride[k]) % side_lengths[k]);
      int32_t up = (ck + 1) % side_lengths[k];
      rot[v] = v + static_cast<int32_t>((up - ck) * stride[k]);
    }
    g.family_generators.push_back(std::move(rot));
  }
  return g;
}

graph cartesian_product(const graph& a, const graph& b) {
  int64_t n64 = static_cast<int64_t>(a.num_vertices) * b.num_vertices;
  require(n64 <= (1 << 24), errc::capacity_exceeded, "product graph too large");
  int32_t nb = b.num_vertices;
  std::vector<std::pair<int32_t, int32_t>> edges;
  edges.reserve(static_cast<size_t>(a.num_edges()) * nb +
                static_cast<size_t>(b.num_edges()) * a.num_vertices);
  for (auto [u, v] : a.edges)
    for (int32_t j = 0; j < nb; ++j) edges.push_back({u * nb + j, v * nb + j});
  for (auto [u, v] : b.edges)
    for (int32_t i = 0; i < a.num_vertices; ++i) edges.push_back({i * nb + u, i * nb + v});
  graph g = finalize_graph(static_cast<int32_t>(n64), std::move(edges),
                           "product(" + a.family_tag + "," + b.family_tag + ")");
  for (const auto& pa : a.family_generators) {
    std::vector<int32_t> perm(g.num_vertices);
    for (int32_t i = 0; i < a.num_vertices; ++i)
      for (int32_t j = 0; j < nb; ++j) perm[i * nb + j] = pa[i] * nb + j;
    g.family_generators.push_back(std::move(perm));
  }
  for (const auto& pb : b.family_generators) {
    std::vector<int32_t> perm(g.num_vertices);
    for (int32_t i = 0; i < a.num_vertices; ++i)
      for (int32_t j = 0; j < nb; ++j) perm[i * nb + j] = i * nb + pb[j];
    g.family_generators.push_back(std::move(perm));
  }
  return g;
}

graph gen_molecular(const graph& atom, int32_t m) {
  require(m >= 2, errc::invalid_parameter, "gen_molecular requires m >= 2");
  require(atom.num_vertices >= 1 && atom.degree >= 1, errc::invalid_parameter,
          "gen_molecular requires a connected regular atom");
  int32_t na = atom.num_vertices;
  int64_t n64 = static_cast<int64_t>(na) * m;
  require(n64 <= (1 << 24), errc::capacity_exceeded, "molecular graph too large");
  int32_t n = static_cast<int32_t>(n64);

  // atom square K_m, indexed copy-major so atoms are contiguous blocks:
  // vertex = copy * |V(atom)| + atom_vertex.
  std::vector<std::pair<int32_t, int32_t>> edges;
  for (int32_t c = 0; c < m; ++c)
    for (auto [u, v] : atom.edges) edges.push_back({c * na + u, c * na + v});
  for (int32_t v = 0; v < na; ++v)
    for (int32_t c1 = 0; c1 < m; ++c1)
      for (int32_t c2 = c1 + 1; c2 < m; ++c2) edges.push_back({c1 * na + v, c2 * na + v});

  graph g = finalize_graph(
      n, std::move(edges), "molecular(" + atom.family_tag + "," + std::to_string(m) + ")");

  molecular_witness w;
  w.atom_count = m;
  w.bridge_constant = (m - 1) / 2.0;  // |F| = |V(atom)|*C(m,2) = |V|*(m-1)/2
  for (int32_t e = 0; e < g.num_edges(); ++e)
    if (g.edges[e].first / na != g.edges[e].second / na) w.bridge_edges.push_back(e);
  for (int32_t c = 0; c < m; ++c) {
    std::vector<int32_t> block(na);
    std::iota(block.begin(), block.end(), c * na);
    w.atoms.push_back(std::move(block));
  }
  // Copy-coordinate swap and rotation (the K_m factor's generators)...
  std::vector<int32_t> swap01(n), rot(n);
  for (int32_t c = 0; c < m; ++c)
    for (int32_t v = 0; v < na; ++v) {
      int32_t cs = c == 0 ? 1 : (c == 1 ? 0 : c);
      swap01[c * na + v] = cs * na + v;
      rot[c * na + v] = ((c + 1) % m) * na + v;
    }
  w.automorphism_generators = {swap01, rot};
  // ...plus the atom family's own generators lifted to every copy.
  for (const auto& pa : atom.family_generators) {
    std::vector<int32_t> perm(n);
    for (int32_t c = 0; c < m; ++c)
      for (int32_t v = 0; v < na; ++v) perm[c * na + v] = c * na + pa[v];
    w.automorphism_generators.push_back(std::move(perm));
  }
  g.family_generators = w.automorphism_generators;
  g.witness = std::move(w);
  return g;
}

witness_report verify_molecular_witness(const graph& g, const molecular_witness& w) {
  int32_t n = g.num_vertices;
  for (int32_t e : w.bridge_edges)
    require(e >= 0 && e < g.num_edges(), errc::invalid_index, "bridge edge index out of range");
  std::vector<char> covered(n, 0);
  for (const auto& block : w.atoms)
    for (int32_t v : block) {
      require(v >= 0 && v < n, errc::invalid_index, "atom vertex out of range");
      require(!covered[v], errc::invalid_index, "atom blocks overlap");
      covered[v] = 1;
    }
  require(std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; }),
          errc::invalid_index, "atom blocks do not cover all vertices");
  for (const auto& perm : w.automorphism_generators) {
    require(static_cast<int32_t>(perm.size()) == n, errc::invalid_index,
            "generator has wrong length");
    std::vector<char> hit(n, 0);
    for (int32_t v : perm) {
      require(v >= 0 && v < n && !hit[v], errc::invalid_index, "generator is not a permutation");
      hit[v] = 1;
    }
  }

  witness_report r;
  r.f_size = static_cast<int64_t>(w.bridge_edges.size());
  r.density_ratio = static_cast<double>(r.f_size) / n;

  // Components of g minus the bridge set.
  std::vector<char> is_bridge(g.num_edges(), 0);
  for (int32_t e : w.bridge_edges) is_bridge[e] = 1;
  union_find uf(n);
  int32_t components = n;
  for (int32_t e = 0; e < g.num_edges(); ++e)
    if (!is_bridge[e] && uf.unite(g.edges[e].first, g.edges[e].second)) --components;
  r.components = components;

  // Do the components coincide with the declared atom blocks?
  r.atoms_match = components == w.atom_count &&
                  static_cast<int32_t>(w.atoms.size()) == w.atom_count;
  if (r.atoms_match)
    for (const auto& block : w.atoms) {
      if (block.empty()) {
        r.atoms_match = false;
        break;
      }
      int32_t root = uf.find(block[0]);
      if (uf.component_size(root) != static_cast<int32_t>(block.size())) r.atoms_match = false;
      for (int32_t v : block)
        if (uf.find(v) != root) r.atoms_match = false;
      if (!r.atoms_match) break;
    }

  // Every generator: a graph automorphism mapping the bridge set onto itself.
  r.invariant_ok = true;
  for (const auto& perm : w.automorphism_generators) {
    for (int32_t e = 0; e < g.num_edges() && r.invariant_ok; ++e) {
      int32_t img = g.edge_index(perm[g.edges[e].first], perm[g.edges[e].second]);
      if (img < 0) r.invariant_ok = false;                       // not an automorphism
      else if (is_bridge[e] != is_bridge[img]) r.invariant_ok = false;  // moves F
    }
    if (!r.invariant_ok) break;
  }
  return r;
}

double power_iteration_spectral_radius(int32_t n,
                                       const std::vector<std::vector<int32_t>>& adjacency,
                                       double tol, int64_t iteration_cap) {
  require(n >= 1, errc::invalid_parameter, "empty graph");
  require(tol > 0.0, errc::invalid_parameter, "tolerance must be positive");
  // Shifted operator B = A + I: primitive for connected graphs, so the
  // iteration converges even on bipartite inputs; lambda(A) = lambda(B) - 1.
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
  double lambda = 0.0, prev = -1.0;
  for (int64_t it = 0; it < iteration_cap; ++it) {
    for (int32_t v = 0; v < n; ++v) {
      double s = x[v];
      for (int32_t w : adjacency[v]) s += x[w];
      y[v] = s;
    }
    double norm = 0.0;
    for (double t : y) norm += t * t;
    norm = std::sqrt(norm);
    require(norm > 0.0, errc::numeric_failure, "power iteration collapsed to zero");
    double rayleigh = 0.0;
    for (int32_t v = 0; v < n; ++v) rayleigh += x[v] * y[v];
    lambda = rayleigh - 1.0;
    for (int32_t v = 0; v < n; ++v) x[v] = y[v] / norm;
    if (it > 0 && std::abs(lambda - prev) <= tol * std::max(1.0, std::abs(lambda)))
      return lambda;
    prev = lambda;
  }
  fail(errc::numeric_failure, "power iteration did not converge within the cap");
}

double spectral_radius(const graph& g, double tol) {
  require(tol > 0.0, errc::invalid_parameter, "tolerance must be positive");
  // All constructed families are regular: the all-ones vector is the Perron
  // eigenvector and the radius is exactly the degree.
  bool regular = true;
  for (const auto& nbrs : g.adjacency)
    if (static_cast<int32_t>(nbrs.size()) != g.degree) regular = false;
  if (regular) return static_cast<double>(g.degree);
  std::vector<std::vector<int32_t>> adj(g.num_vertices);
  for (int32_t v = 0; v < g.num_vertices; ++v)
    for (auto [w, e] : g.adjacency[v]) {
      (void)e;
      adj[v].push_back(w);
    }
  return power_iteration_spectral_radius(g.num_vertices, adj, tol);
}

uint64_t graph_hash(const graph& g) { return g.hash; }

}  // namespace percolab
