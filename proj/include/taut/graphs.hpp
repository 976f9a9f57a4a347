#pragma once
#include <string>
#include <utility>
#include <vector>

namespace taut {

// Connected multigraph with genus-labelled vertices, numbered markings
// attached as legs, and loops/parallel edges allowed.  Half-edge ids are
// 2e (first endpoint) and 2e+1 (second endpoint) of edge e; surgery
// keeps edge indices, so half-edge ids survive endpoint reassignment.
struct StableGraph {
  std::vector<int> genus;                 // per vertex
  std::vector<std::pair<int, int>> legs;  // (marking, vertex)
  std::vector<std::pair<int, int>> edges; // endpoint vertices

  int num_vertices() const { return static_cast<int>(genus.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_legs() const { return static_cast<int>(legs.size()); }
  int first_betti() const { return num_edges() - num_vertices() + 1; }
  int total_genus() const;
  int edge_valence(int v) const;          // loops count twice
  int valence(int v) const;               // edge ends + legs
  std::vector<int> markings_at(int v) const;    // sorted
  std::vector<int> half_edges_at(int v) const;  // ascending ids
  int he_vertex(int h) const {
    return (h & 1) ? edges[h >> 1].second : edges[h >> 1].first;
  }
  static int he_partner(int h) { return h ^ 1; }

  // multiplicity matrix; m[v][v] counts loop edges once
  std::vector<std::vector<int>> multiplicity() const;

  bool is_connected() const;
  bool is_stable() const;  // connected and 2g(v) - 2 + valence(v) > 0
  std::string str() const;
};

// Canonical representative of the isomorphism class and its string key.
std::string canonical_key(const StableGraph& G);
StableGraph canonical_graph(const StableGraph& G);

// All vertex permutations preserving genus, leg placement and adjacency.
std::vector<std::vector<int>> vertex_symmetries(const StableGraph& G);
// Order of the automorphism group (acting on half-edges, legs fixed).
long automorphism_order(const StableGraph& G);

// Divisor type of one edge, read off after contracting all the others.
struct EdgeType {
  bool separating = false;
  int genus_side = 0;                // side of edges[e].first
  std::vector<int> markings_side;    // sorted markings on that side
};
EdgeType classify_edge(const StableGraph& G, int e);

// Surgery.  Both return a graph whose pre-existing half-edge ids are
// unchanged; the created edge is the last one (ids 2E, 2E+1).
StableGraph with_loop_at(const StableGraph& G, int v);  // genus[v] drops by 1
StableGraph with_split_vertex(const StableGraph& G, int v, int g_keep,
                              const std::vector<int>& markings_keep,
                              const std::vector<int>& hes_keep);

// One representative per isomorphism class, sorted by canonical key.
std::vector<StableGraph> enumerate_stable(int g, int n);
std::vector<StableGraph> enumerate_stable_bounded(int g, int n, int max_edges);

// Graphs of genus g whose underlying multigraph is a single cycle
// (so V = E and every vertex carries positive genus).
std::vector<StableGraph> circular_graphs(int g);

// Per-edge flag: true for edges of a spanning tree rooted at vertex 0.
std::vector<bool> spanning_tree(const StableGraph& G);

} // namespace taut
