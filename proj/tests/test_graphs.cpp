#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "taut/graphs.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace taut;

static StableGraph trivial_graph(int g, int n) {
  StableGraph G;
  G.genus = {g};
  for (int i = 1; i <= n; ++i) G.legs.emplace_back(i, 0);
  return G;
}

// Independent generator: close the trivial graph under all single-edge
// degenerations (add a loop, or split one vertex every possible way).
static std::set<std::string> degeneration_closure(int g, int n) {
  StableGraph triv = trivial_graph(g, n);
  std::set<std::string> pool{canonical_key(triv)};
  std::vector<StableGraph> frontier{triv};
  while (!frontier.empty()) {
    std::vector<StableGraph> next;
    for (const auto& G : frontier) {
      for (int v = 0; v < G.num_vertices(); ++v) {
        std::vector<StableGraph> cands;
        if (G.genus[v] >= 1) cands.push_back(with_loop_at(G, v));
        auto ms = G.markings_at(v);
        auto hs = G.half_edges_at(v);
        const int nm = static_cast<int>(ms.size());
        const int nh = static_cast<int>(hs.size());
        for (int g1 = 0; g1 <= G.genus[v]; ++g1)
          for (int mm = 0; mm < (1 << nm); ++mm)
            for (int hm = 0; hm < (1 << nh); ++hm) {
              std::vector<int> mkeep, hkeep;
              for (int i = 0; i < nm; ++i)
                if (mm & (1 << i)) mkeep.push_back(ms[i]);
              for (int i = 0; i < nh; ++i)
                if (hm & (1 << i)) hkeep.push_back(hs[i]);
              cands.push_back(with_split_vertex(G, v, g1, mkeep, hkeep));
            }
        for (auto& H : cands) {
          if (!H.is_stable()) continue;
          if (pool.insert(canonical_key(H)).second) next.push_back(H);
        }
      }
    }
    frontier = std::move(next);
  }
  return pool;
}

TEST_CASE("small enumeration counts") {
  CHECK(enumerate_stable(0, 3).size() == 1);
  CHECK(enumerate_stable(0, 4).size() == 4);
  CHECK(enumerate_stable(1, 1).size() == 2);
  CHECK(enumerate_stable(1, 2).size() == 5);
  CHECK(enumerate_stable(2, 0).size() == 7);
}

TEST_CASE("bounded enumeration respects the edge cap") {
  auto up_to_one = enumerate_stable_bounded(2, 0, 1);
  CHECK(up_to_one.size() == 3);  // trivial, loop, two genus-1 vertices
  for (const auto& G : up_to_one) CHECK(G.num_edges() <= 1);
  auto all = enumerate_stable(2, 0);
  auto capped = enumerate_stable_bounded(2, 0, 99);
  CHECK(all.size() == capped.size());
}

TEST_CASE("enumerated graphs are stable, connected, of the right genus") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {1, 2}, {2, 1}, {0, 5}}) {
    auto graphs = enumerate_stable(g, n);
    CHECK(!graphs.empty());
    std::set<std::string> keys;
    for (const auto& G : graphs) {
      CHECK(G.is_stable());
      CHECK(G.total_genus() == g);
      CHECK(G.num_vertices() <= std::max(1, 2 * g - 2 + n));
      std::vector<int> ms;
      for (const auto& l : G.legs) ms.push_back(l.first);
      std::sort(ms.begin(), ms.end());
      std::vector<int> expect;
      for (int i = 1; i <= n; ++i) expect.push_back(i);
      CHECK(ms == expect);
      CHECK(keys.insert(canonical_key(G)).second);  // pairwise distinct
    }
  }
}

TEST_CASE("enumeration agrees with degeneration closure") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {1, 2}, {2, 1}, {3, 0}}) {
    auto graphs = enumerate_stable(g, n);
    std::set<std::string> direct;
    for (const auto& G : graphs) direct.insert(canonical_key(G));
    CHECK(direct == degeneration_closure(g, n));
  }
}

TEST_CASE("canonical key is invariant under relabelling") {
  std::mt19937 rng(777);
  for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {1, 2}, {2, 1}}) {
    for (const auto& G : enumerate_stable(g, n)) {
      std::string key = canonical_key(G);
      for (int trial = 0; trial < 5; ++trial) {
        const int V = G.num_vertices();
        std::vector<int> perm(V);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        StableGraph H;
        H.genus.resize(V);
        for (int v = 0; v < V; ++v) H.genus[perm[v]] = G.genus[v];
        for (const auto& l : G.legs) H.legs.emplace_back(l.first, perm[l.second]);
        for (const auto& e : G.edges) {
          int a = perm[e.first], b = perm[e.second];
          if (rng() & 1) std::swap(a, b);
          H.edges.emplace_back(a, b);
        }
        std::shuffle(H.edges.begin(), H.edges.end(), rng);
        std::shuffle(H.legs.begin(), H.legs.end(), rng);
        CHECK(canonical_key(H) == key);
        CHECK(canonical_graph(H).str() == canonical_graph(G).str());
      }
    }
  }
}

TEST_CASE("automorphism orders of reference graphs") {
  // single loop on a genus-(g-1) vertex
  StableGraph loop;
  loop.genus = {1};
  loop.edges = {{0, 0}};
  CHECK(automorphism_order(loop) == 2);

  // two genus-1 vertices joined by one edge
  StableGraph bridge;
  bridge.genus = {1, 1};
  bridge.edges = {{0, 1}};
  CHECK(automorphism_order(bridge) == 2);

  // same but distinct genera: only the identity
  StableGraph bridge12;
  bridge12.genus = {1, 2};
  bridge12.edges = {{0, 1}};
  CHECK(automorphism_order(bridge12) == 1);

  // two genus-1 vertices, two parallel edges
  StableGraph banana;
  banana.genus = {1, 1};
  banana.edges = {{0, 1}, {0, 1}};
  CHECK(automorphism_order(banana) == 4);

  // theta graph: two genus-0 vertices, three parallel edges
  StableGraph theta;
  theta.genus = {0, 0};
  theta.edges = {{0, 1}, {0, 1}, {0, 1}};
  CHECK(automorphism_order(theta) == 12);

  // genus-1 vertex joined to a genus-0 vertex carrying a loop
  StableGraph mixed;
  mixed.genus = {1, 0};
  mixed.edges = {{0, 1}, {1, 1}};
  CHECK(automorphism_order(mixed) == 2);

  // dumbbell: two genus-0 loop vertices joined by a bridge
  StableGraph dumbbell;
  dumbbell.genus = {0, 0};
  dumbbell.edges = {{0, 0}, {0, 1}, {1, 1}};
  CHECK(automorphism_order(dumbbell) == 8);

  // one genus-0 vertex carrying two loops
  StableGraph twoloops;
  twoloops.genus = {0};
  twoloops.edges = {{0, 0}, {0, 0}};
  CHECK(automorphism_order(twoloops) == 8);

  // triangle with genera (1,1,1) / (1,1,2)
  StableGraph tri;
  tri.genus = {1, 1, 1};
  tri.edges = {{0, 1}, {1, 2}, {2, 0}};
  CHECK(automorphism_order(tri) == 6);
  tri.genus = {1, 1, 2};
  CHECK(automorphism_order(tri) == 2);

  // markings pin their vertices
  StableGraph marked = banana;
  marked.legs = {{1, 0}, {2, 1}};
  CHECK(automorphism_order(marked) == 2);
}

TEST_CASE("vertex symmetries match a direct permutation scan") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{2, 0}, {2, 1}, {3, 0}}) {
    for (const auto& G : enumerate_stable(g, n)) {
      const int V = G.num_vertices();
      auto m = G.multiplicity();
      std::vector<int> perm(V);
      std::iota(perm.begin(), perm.end(), 0);
      int count = 0;
      do {
        bool ok = true;
        for (int v = 0; ok && v < V; ++v) {
          if (G.genus[perm[v]] != G.genus[v]) ok = false;
          if (ok && G.markings_at(perm[v]) != G.markings_at(v)) ok = false;
        }
        for (int v = 0; ok && v < V; ++v)
          for (int u = 0; ok && u <= v; ++u)
            if (m[perm[v]][perm[u]] != m[v][u]) ok = false;
        if (ok) ++count;
      } while (std::next_permutation(perm.begin(), perm.end()));
      CHECK(static_cast<int>(vertex_symmetries(G).size()) == count);
    }
  }
}

TEST_CASE("circular graphs") {
  CHECK(circular_graphs(2).size() == 1);
  CHECK(circular_graphs(3).size() == 2);
  CHECK(circular_graphs(4).size() == 3);
  CHECK(circular_graphs(5).size() == 5);
  for (int g = 2; g <= 5; ++g) {
    for (const auto& G : circular_graphs(g)) {
      CHECK(G.num_vertices() == G.num_edges());
      CHECK(G.first_betti() == 1);
      CHECK(G.total_genus() == g);
      CHECK(G.is_stable());
      for (int v = 0; v < G.num_vertices(); ++v) {
        CHECK(G.edge_valence(v) == 2);
        CHECK(G.genus[v] >= 1);
      }
    }
  }
  // cross-check against a filter of the generic enumeration
  for (int g = 2; g <= 4; ++g) {
    std::set<std::string> from_filter;
    for (const auto& G : enumerate_stable(g, 0)) {
      bool circ = G.first_betti() == 1;
      for (int v = 0; circ && v < G.num_vertices(); ++v)
        if (G.edge_valence(v) != 2) circ = false;
      if (circ) from_filter.insert(canonical_key(G));
    }
    std::set<std::string> direct;
    for (const auto& G : circular_graphs(g)) direct.insert(canonical_key(G));
    CHECK(direct == from_filter);
  }
}

TEST_CASE("edge classification") {
  StableGraph banana;
  banana.genus = {1, 1};
  banana.edges = {{0, 1}, {0, 1}};
  CHECK(!classify_edge(banana, 0).separating);
  CHECK(!classify_edge(banana, 1).separating);

  StableGraph loop;
  loop.genus = {1};
  loop.edges = {{0, 0}};
  CHECK(!classify_edge(loop, 0).separating);

  StableGraph chain;
  chain.genus = {1, 1};
  chain.legs = {{1, 0}, {2, 1}};
  chain.edges = {{0, 1}};
  auto t = classify_edge(chain, 0);
  CHECK(t.separating);
  CHECK(t.genus_side == 1);
  CHECK(t.markings_side == std::vector<int>{1});

  // bridge whose side contains a loop: side genus includes the cycle
  StableGraph dumbbell;
  dumbbell.genus = {1, 0};
  dumbbell.edges = {{0, 1}, {1, 1}};
  auto u = classify_edge(dumbbell, 0);
  CHECK(u.separating);
  CHECK(u.genus_side == 1);        // side of vertex 0
  auto w = classify_edge(dumbbell, 1);
  CHECK(!w.separating);
}

TEST_CASE("surgery keeps half-edge ids and reaches stable models") {
  StableGraph G = trivial_graph(2, 1);
  StableGraph L = with_loop_at(G, 0);
  CHECK(L.genus[0] == 1);
  CHECK(L.num_edges() == 1);
  CHECK(L.is_stable());

  // split the loop vertex, sending one loop side to each part
  StableGraph S = with_split_vertex(L, 0, 0, {1}, {0});
  CHECK(S.num_vertices() == 2);
  CHECK(S.num_edges() == 2);
  CHECK(S.total_genus() == 2);
  CHECK(S.is_stable());
  // old loop has become a connecting edge
  CHECK(S.edges[0].first != S.edges[0].second);
}

TEST_CASE("spanning tree splits edges into tree and cotree") {
  for (const auto& G : enumerate_stable(2, 1)) {
    auto tree = spanning_tree(G);
    int nt = 0;
    for (bool b : tree) nt += b;
    CHECK(nt == G.num_vertices() - 1);
    CHECK(G.num_edges() - nt == G.first_betti());
  }
}

TEST_CASE("graph printing is deterministic") {
  StableGraph G;
  G.genus = {1, 0};
  G.legs = {{2, 1}, {1, 0}};
  G.edges = {{1, 0}, {1, 1}};
  CHECK(G.str() == "g=[1,0] legs=[1:0,2:1] edges=[(0,1),(1,1)]");
}
