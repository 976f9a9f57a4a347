#include "taut/graphs.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace taut {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

int StableGraph::total_genus() const {
  int s = first_betti();
  for (int g : genus) s += g;
  return s;
}

int StableGraph::edge_valence(int v) const {
  int d = 0;
  for (const auto& e : edges) d += (e.first == v) + (e.second == v);
  return d;
}

int StableGraph::valence(int v) const {
  int d = edge_valence(v);
  for (const auto& l : legs) d += (l.second == v);
  return d;
}

std::vector<int> StableGraph::markings_at(int v) const {
  std::vector<int> out;
  for (const auto& l : legs)
    if (l.second == v) out.push_back(l.first);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> StableGraph::half_edges_at(int v) const {
  std::vector<int> out;
  for (int e = 0; e < num_edges(); ++e) {
    if (edges[e].first == v) out.push_back(2 * e);
    if (edges[e].second == v) out.push_back(2 * e + 1);
  }
  return out;
}

std::vector<std::vector<int>> StableGraph::multiplicity() const {
  std::vector<std::vector<int>> m(num_vertices(), std::vector<int>(num_vertices(), 0));
  for (const auto& e : edges) {
    if (e.first == e.second) m[e.first][e.first] += 1;
    else { m[e.first][e.second] += 1; m[e.second][e.first] += 1; }
  }
  return m;
}

bool StableGraph::is_connected() const {
  if (num_vertices() == 0) return false;
  UnionFind uf(num_vertices());
  for (const auto& e : edges) uf.unite(e.first, e.second);
  for (int v = 1; v < num_vertices(); ++v)
    if (uf.find(v) != uf.find(0)) return false;
  return true;
}

bool StableGraph::is_stable() const {
  if (!is_connected()) return false;
  for (int v = 0; v < num_vertices(); ++v) {
    if (genus[v] < 0) return false;
    if (2 * genus[v] - 2 + valence(v) <= 0) return false;
  }
  return true;
}

std::string StableGraph::str() const {
  std::ostringstream os;
  os << "g=[";
  for (int v = 0; v < num_vertices(); ++v) os << (v ? "," : "") << genus[v];
  os << "] legs=[";
  auto ls = legs;
  std::sort(ls.begin(), ls.end());
  for (size_t i = 0; i < ls.size(); ++i)
    os << (i ? "," : "") << ls[i].first << ":" << ls[i].second;
  os << "] edges=[";
  std::vector<std::pair<int, int>> es;
  for (const auto& e : edges)
    es.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
  std::sort(es.begin(), es.end());
  for (size_t i = 0; i < es.size(); ++i)
    os << (i ? "," : "") << "(" << es[i].first << "," << es[i].second << ")";
  os << "]";
  return os.str();
}

namespace {

// ---- canonical form: colour refinement with individualisation ----

std::vector<int> initial_colors(const StableGraph& G) {
  const int V = G.num_vertices();
  std::vector<std::string> key(V);
  for (int v = 0; v < V; ++v) {
    std::ostringstream os;
    os << G.genus[v] << "|" << G.edge_valence(v) << "|";
    for (int m : G.markings_at(v)) os << m << ",";
    key[v] = os.str();
  }
  std::vector<std::string> uniq(key);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  std::vector<int> color(V);
  for (int v = 0; v < V; ++v)
    color[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), key[v]) - uniq.begin());
  return color;
}

void refine(const StableGraph& G, const std::vector<std::vector<int>>& m,
            std::vector<int>& color) {
  const int V = G.num_vertices();
  for (;;) {
    // signature: own color, loop count, sorted neighbour (color, mult) pairs
    std::vector<std::vector<int>> sig(V);
    for (int v = 0; v < V; ++v) {
      sig[v].push_back(color[v]);
      sig[v].push_back(m[v][v]);
      std::vector<std::pair<int, int>> nb;
      for (int u = 0; u < V; ++u)
        if (u != v && m[v][u] > 0) nb.emplace_back(color[u], m[v][u]);
      std::sort(nb.begin(), nb.end());
      for (auto& p : nb) { sig[v].push_back(p.first); sig[v].push_back(p.second); }
    }
    std::vector<std::vector<int>> uniq(sig);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> nc(V);
    for (int v = 0; v < V; ++v)
      nc[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
    if (nc == color) return;
    color = std::move(nc);
  }
}

std::string serialize_with_order(const StableGraph& G, const std::vector<int>& relabel) {
  std::ostringstream os;
  const int V = G.num_vertices();
  std::vector<int> inv(V);
  for (int v = 0; v < V; ++v) inv[relabel[v]] = v;
  os << V << ";";
  for (int nv = 0; nv < V; ++nv) os << G.genus[inv[nv]] << ",";
  os << ";";
  auto ls = G.legs;
  for (auto& l : ls) l.second = relabel[l.second];
  std::sort(ls.begin(), ls.end());
  for (const auto& l : ls) os << l.first << ":" << l.second << ",";
  os << ";";
  std::vector<std::pair<int, int>> es;
  for (const auto& e : G.edges) {
    int a = relabel[e.first], b = relabel[e.second];
    es.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(es.begin(), es.end());
  for (const auto& e : es) os << e.first << "-" << e.second << ",";
  return os.str();
}

struct CanonSearch {
  const StableGraph& G;
  const std::vector<std::vector<int>>& m;
  std::string best;
  std::vector<int> best_relabel;
  bool has_best = false;

  void visit(std::vector<int> color) {
    refine(G, m, color);
    const int V = G.num_vertices();
    // locate lowest color id shared by several vertices
    std::map<int, std::vector<int>> classes;
    for (int v = 0; v < V; ++v) classes[color[v]].push_back(v);
    for (const auto& [c, members] : classes) {
      if (members.size() > 1) {
        for (int v : members) {
          std::vector<int> c2 = color;
          c2[v] = V + c;  // fresh color, sorts after existing ones
          visit(std::move(c2));
        }
        return;
      }
    }
    // discrete colouring: relabel by color rank
    std::vector<std::pair<int, int>> order;
    for (int v = 0; v < V; ++v) order.emplace_back(color[v], v);
    std::sort(order.begin(), order.end());
    std::vector<int> relabel(V);
    for (int rank = 0; rank < V; ++rank) relabel[order[rank].second] = rank;
    std::string s = serialize_with_order(G, relabel);
    if (!has_best || s < best) {
      best = std::move(s);
      best_relabel = std::move(relabel);
      has_best = true;
    }
  }
};

CanonSearch run_canon(const StableGraph& G, const std::vector<std::vector<int>>& m) {
  CanonSearch cs{G, m};
  cs.visit(initial_colors(G));
  return cs;
}

} // namespace

std::string canonical_key(const StableGraph& G) {
  auto m = G.multiplicity();
  return run_canon(G, m).best;
}

StableGraph canonical_graph(const StableGraph& G) {
  auto m = G.multiplicity();
  auto cs = run_canon(G, m);
  const auto& relabel = cs.best_relabel;
  StableGraph H;
  H.genus.resize(G.num_vertices());
  for (int v = 0; v < G.num_vertices(); ++v) H.genus[relabel[v]] = G.genus[v];
  for (const auto& l : G.legs) H.legs.emplace_back(l.first, relabel[l.second]);
  std::sort(H.legs.begin(), H.legs.end());
  for (const auto& e : G.edges) {
    int a = relabel[e.first], b = relabel[e.second];
    H.edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(H.edges.begin(), H.edges.end());
  return H;
}

std::vector<std::vector<int>> vertex_symmetries(const StableGraph& G) {
  const int V = G.num_vertices();
  auto m = G.multiplicity();
  auto color = initial_colors(G);
  refine(G, m, color);
  std::vector<std::vector<int>> out;
  std::vector<int> sigma(V, -1);
  std::vector<bool> used(V, false);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == V) { out.push_back(sigma); return; }
    for (int w = 0; w < V; ++w) {
      if (used[w] || color[w] != color[v]) continue;
      if (G.genus[w] != G.genus[v]) continue;
      if (G.markings_at(w) != G.markings_at(v)) continue;
      bool ok = (m[v][v] == m[w][w]);
      for (int u = 0; ok && u < v; ++u)
        if (m[v][u] != m[w][sigma[u]]) ok = false;
      if (!ok) continue;
      sigma[v] = w; used[w] = true;
      self(self, v + 1);
      used[w] = false; sigma[v] = -1;
    }
  };
  rec(rec, 0);
  return out;
}

long automorphism_order(const StableGraph& G) {
  auto sigmas = vertex_symmetries(G);
  auto m = G.multiplicity();
  long per = 1;
  const int V = G.num_vertices();
  for (int v = 0; v < V; ++v) {
    for (int k = 2; k <= m[v][v]; ++k) per *= k;  // loop bundle permutations
    per <<= m[v][v];                              // half-edge swap per loop
    for (int u = v + 1; u < V; ++u)
      for (int k = 2; k <= m[v][u]; ++k) per *= k;
  }
  return static_cast<long>(sigmas.size()) * per;
}

EdgeType classify_edge(const StableGraph& G, int e) {
  const int V = G.num_vertices();
  UnionFind uf(V);
  for (int f = 0; f < G.num_edges(); ++f)
    if (f != e) uf.unite(G.edges[f].first, G.edges[f].second);
  EdgeType t;
  int a = G.edges[e].first, b = G.edges[e].second;
  if (uf.find(a) == uf.find(b)) { t.separating = false; return t; }
  t.separating = true;
  int vs = 0, es = 0, gs = 0;
  for (int v = 0; v < V; ++v)
    if (uf.find(v) == uf.find(a)) { ++vs; gs += G.genus[v]; }
  for (int f = 0; f < G.num_edges(); ++f)
    if (f != e && uf.find(G.edges[f].first) == uf.find(a)) ++es;
  t.genus_side = gs + (es - vs + 1);
  for (const auto& l : G.legs)
    if (uf.find(l.second) == uf.find(a)) t.markings_side.push_back(l.first);
  std::sort(t.markings_side.begin(), t.markings_side.end());
  return t;
}

StableGraph with_loop_at(const StableGraph& G, int v) {
  assert(G.genus[v] >= 1);
  StableGraph H = G;
  H.genus[v] -= 1;
  H.edges.emplace_back(v, v);
  return H;
}

StableGraph with_split_vertex(const StableGraph& G, int v, int g_keep,
                              const std::vector<int>& markings_keep,
                              const std::vector<int>& hes_keep) {
  assert(g_keep >= 0 && g_keep <= G.genus[v]);
  StableGraph H = G;
  const int nv = H.num_vertices();
  H.genus[v] = g_keep;
  H.genus.push_back(G.genus[v] - g_keep);
  std::set<int> mk(markings_keep.begin(), markings_keep.end());
  for (auto& l : H.legs)
    if (l.second == v && !mk.count(l.first)) l.second = nv;
  std::set<int> hk(hes_keep.begin(), hes_keep.end());
  for (int h : G.half_edges_at(v)) {
    if (hk.count(h)) continue;
    if (h & 1) H.edges[h >> 1].second = nv;
    else H.edges[h >> 1].first = nv;
  }
  H.edges.emplace_back(v, nv);
  return H;
}

namespace {

// Edge-multiset backtracking for one (genus vector, leg assignment) shape.
struct EdgeGen {
  int V, E;
  std::vector<int> mindeg;
  std::vector<std::pair<int, int>> pairs;  // all (a,b), a <= b, lexicographic
  std::vector<std::pair<int, int>> chosen;
  std::vector<int> deg;
  const StableGraph* base;
  std::set<std::string>* seen;
  std::vector<StableGraph>* out;

  void emit() {
    StableGraph G = *base;
    G.edges = chosen;
    if (!G.is_stable()) return;
    std::string key = canonical_key(G);
    if (seen->insert(key).second) out->push_back(canonical_graph(G));
  }

  void rec(size_t start, int remaining) {
    if (remaining == 0) {
      for (int v = 0; v < V; ++v)
        if (deg[v] < mindeg[v]) return;
      emit();
      return;
    }
    int deficit = 0;
    for (int v = 0; v < V; ++v) deficit += std::max(0, mindeg[v] - deg[v]);
    if (deficit > 2 * remaining) return;
    for (size_t p = start; p < pairs.size(); ++p) {
      auto [a, b] = pairs[p];
      // vertices below a no longer occur in any remaining pair
      bool starving = false;
      for (int v = 0; v < a && !starving; ++v)
        if (deg[v] < mindeg[v]) starving = true;
      if (starving) break;
      chosen.emplace_back(a, b);
      deg[a] += 1; deg[b] += 1;
      rec(p, remaining - 1);
      deg[a] -= 1; deg[b] -= 1;
      chosen.pop_back();
    }
  }
};

void genus_vectors(int V, int total, int cap, std::vector<int>& cur,
                   const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(cur.size()) == V) {
    if (total == 0) fn(cur);
    return;
  }
  for (int g = std::min(cap, total); g >= 0; --g) {
    cur.push_back(g);
    genus_vectors(V, total - g, g, cur, fn);
    cur.pop_back();
  }
}

} // namespace

std::vector<StableGraph> enumerate_stable_bounded(int g, int n, int max_edges) {
  if (g < 0 || n < 0 || (g == 0 && n < 3) || (g == 1 && n < 1))
    return {};
  std::set<std::string> seen;
  std::vector<StableGraph> out;
  const int Vmax = 2 * g - 2 + n;
  const int dim = 3 * g - 3 + n;
  for (int V = 1; V <= std::max(1, Vmax); ++V) {
    int Elo = V - 1;
    int Ehi = std::min({max_edges, g + V - 1, dim});
    for (int E = Elo; E <= Ehi; ++E) {
      const int h1 = E - V + 1;
      if (h1 < 0) continue;
      const int gsum = g - h1;
      if (gsum < 0) continue;
      std::vector<int> gv;
      genus_vectors(V, gsum, gsum, gv, [&](const std::vector<int>& genus) {
        // leg assignments: V^n
        std::vector<int> la(n, 0);
        for (;;) {
          StableGraph base;
          base.genus = genus;
          for (int i = 0; i < n; ++i) base.legs.emplace_back(i + 1, la[i]);
          EdgeGen eg;
          eg.V = V; eg.E = E;
          eg.mindeg.resize(V);
          for (int v = 0; v < V; ++v) {
            int need = 3 - 2 * genus[v] - static_cast<int>(base.markings_at(v).size());
            eg.mindeg[v] = std::max(need, V >= 2 ? 1 : 0);
          }
          for (int a = 0; a < V; ++a)
            for (int b = a; b < V; ++b) eg.pairs.emplace_back(a, b);
          eg.deg.assign(V, 0);
          eg.base = &base; eg.seen = &seen; eg.out = &out;
          eg.rec(0, E);
          // next leg assignment
          int i = 0;
          while (i < n && la[i] == V - 1) { la[i] = 0; ++i; }
          if (i == n) break;
          la[i] += 1;
        }
      });
    }
  }
  std::sort(out.begin(), out.end(), [](const StableGraph& a, const StableGraph& b) {
    return canonical_key(a) < canonical_key(b);
  });
  return out;
}

std::vector<StableGraph> enumerate_stable(int g, int n) {
  return enumerate_stable_bounded(g, n, 3 * g - 3 + n);
}

std::vector<StableGraph> circular_graphs(int g) {
  std::vector<StableGraph> out;
  if (g < 2) return out;
  const int total = g - 1;
  std::set<std::vector<int>> necklaces;
  // compositions of g-1 into positive parts, canonicalised up to
  // rotation and reflection
  std::vector<int> cur;
  auto canon_necklace = [](std::vector<int> c) {
    std::vector<int> best = c;
    const int L = static_cast<int>(c.size());
    for (int rev = 0; rev < 2; ++rev) {
      for (int r = 0; r < L; ++r) {
        std::vector<int> rot(c.begin() + r, c.end());
        rot.insert(rot.end(), c.begin(), c.begin() + r);
        if (rot < best) best = rot;
      }
      std::reverse(c.begin(), c.end());
    }
    return best;
  };
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      necklaces.insert(canon_necklace(cur));
      return;
    }
    for (int part = 1; part <= remaining; ++part) {
      cur.push_back(part);
      self(self, remaining - part);
      cur.pop_back();
    }
  };
  rec(rec, total);
  for (const auto& neck : necklaces) {
    StableGraph G;
    G.genus = neck;
    const int L = static_cast<int>(neck.size());
    if (L == 1) G.edges.emplace_back(0, 0);
    else
      for (int i = 0; i < L; ++i) G.edges.emplace_back(i, (i + 1) % L);
    out.push_back(canonical_graph(G));
  }
  std::sort(out.begin(), out.end(), [](const StableGraph& a, const StableGraph& b) {
    return canonical_key(a) < canonical_key(b);
  });
  return out;
}

std::vector<bool> spanning_tree(const StableGraph& G) {
  std::vector<bool> in_tree(G.num_edges(), false);
  UnionFind uf(G.num_vertices());
  for (int e = 0; e < G.num_edges(); ++e) {
    int a = G.edges[e].first, b = G.edges[e].second;
    if (uf.find(a) != uf.find(b)) {
      uf.unite(a, b);
      in_tree[e] = true;
    }
  }
  return in_tree;
}

} // namespace taut
