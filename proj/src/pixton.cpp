#include "taut/pixton.hpp"

#include "taut/rational.hpp"
#include "taut/unipoly.hpp"

#include <algorithm>
#include <functional>
#include <gmpxx.h>
#include <map>
#include <numeric>

namespace taut {

namespace {

// Elimination order for solving tree-edge weights: (vertex, parent edge)
// pairs, leaves first, rooted at vertex 0.
struct TreeOrder {
  std::vector<std::pair<int, int>> steps;  // (vertex, its parent edge)
  std::vector<int> cotree;                 // free edges
};

TreeOrder tree_order(const StableGraph& G) {
  std::vector<bool> tree = spanning_tree(G);
  TreeOrder T;
  for (int e = 0; e < G.num_edges(); ++e)
    if (!tree[e]) T.cotree.push_back(e);
  // BFS the tree from vertex 0, then emit children before parents
  int V = G.num_vertices();
  std::vector<int> parent_edge(V, -1), order;
  std::vector<bool> seen(V, false);
  seen[0] = true;
  order.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int e = 0; e < G.num_edges(); ++e) {
      if (!tree[e]) continue;
      int a = G.edges[e].first, b = G.edges[e].second;
      int w = (a == v) ? b : (b == v) ? a : -1;
      if (w < 0 || seen[w]) continue;
      seen[w] = true;
      parent_edge[w] = e;
      order.push_back(w);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent_edge[*it] >= 0) T.steps.push_back({*it, parent_edge[*it]});
  return T;
}

// Iterate all admissible weightings; f receives per-edge products
// a_e = w(h) w(h') as longs.  Returns false when the legs cannot
// balance at this modulus.
template <class F>
bool for_each_weighting(const StableGraph& G, const std::vector<int>& A,
                        long r, const TreeOrder& T, F&& f) {
  int V = G.num_vertices(), E = G.num_edges();
  std::vector<long> leg_res(V, 0);
  long total = 0;
  for (std::size_t i = 0; i < G.legs.size(); ++i) {
    long a = ((A[G.legs[i].first - 1] % r) + r) % r;  // A indexed by marking
    leg_res[G.legs[i].second] += a;
    total += a;
  }
  if (total % r != 0) return false;
  int nb = int(T.cotree.size());
  std::vector<long> x(nb, 0), a_e(E, 0), acc(V, 0);
  for (;;) {
    // solve this gauge choice
    for (int v = 0; v < V; ++v) acc[v] = leg_res[v] % r;
    for (int i = 0; i < nb; ++i) {
      int e = T.cotree[i];
      a_e[e] = x[i] * ((r - x[i]) % r);
      acc[G.edges[e].first] = (acc[G.edges[e].first] + x[i]) % r;
      acc[G.edges[e].second] = (acc[G.edges[e].second] + (r - x[i]) % r) % r;
    }
    for (auto& [v, e] : T.steps) {
      long w = (r - acc[v] % r) % r;  // weight at v's side of edge e
      a_e[e] = w * ((r - w) % r);
      int other = (G.edges[e].first == v) ? G.edges[e].second
                                          : G.edges[e].first;
      acc[v] = 0;
      acc[other] = (acc[other] + (r - w) % r) % r;
    }
    f(a_e);
    // odometer over the free values
    int i = 0;
    while (i < nb && ++x[i] == r) x[i++] = 0;
    if (i == nb) break;
    if (nb == 0) break;
  }
  return true;
}

// all (k_e >= 1) vectors with sum <= dmax over E slots; E = 0 gives {[]}
std::vector<std::vector<int>> k_vectors(int E, int dmax) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(E, 1);
  if (E == 0) {
    out.push_back({});
    return out;
  }
  if (E > dmax) return out;
  std::function<void(int, int)> rec = [&](int e, int rest) {
    if (e == E) {
      out.push_back(cur);
      return;
    }
    for (int k = 1; k <= rest - (E - 1 - e); ++k) {
      cur[e] = k;
      rec(e + 1, rest - k);
    }
  };
  rec(0, dmax);
  return out;
}

bool has_bridge(const StableGraph& G) {
  for (int e = 0; e < G.num_edges(); ++e)
    if (classify_edge(G, e).separating) return true;
  return false;
}

// distribute jrem psi powers over the legs, with weight prod of
// abar_i^{2 j_i} / j_i!
void leg_distributions(const std::vector<long>& abar, int jrem,
                       std::vector<std::vector<int>>& out) {
  int n = int(abar.size());
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int i, int rest) {
    if (i == n) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    int cap = abar[i] == 0 ? 0 : rest;
    for (int j = 0; j <= cap; ++j) {
      cur[i] = j;
      rec(i + 1, rest - j);
    }
    cur[i] = 0;
  };
  rec(0, jrem);
}

} // namespace

long weighting_count(const StableGraph& G, const std::vector<int>& A, long r) {
  TreeOrder T = tree_order(G);
  long count = 0;
  bool ok = for_each_weighting(G, A, r, T,
                               [&](const std::vector<long>&) { ++count; });
  return ok ? count : 0;
}

namespace {

TautClass p_eval(const std::vector<StableGraph>& graphs, int d,
                 const std::vector<int>& A, long r) {
  int n = int(A.size());
  bool zero_a = std::all_of(A.begin(), A.end(), [](int a) { return a == 0; });
  TautClass out;
  for (const StableGraph& G : graphs) {
    int E = G.num_edges();
    if (zero_a && E > 0 && has_bridge(G)) continue;  // forced zero weight
    int b1 = G.first_betti();
    TreeOrder T = tree_order(G);
    auto kvecs = k_vectors(E, d);
    if (kvecs.empty()) continue;
    // moment sums over all weightings, one per k-vector
    using uw = unsigned __int128;
    std::vector<mpz_class> mom(kvecs.size(), 0);
    std::vector<uw> acc(kvecs.size(), 0);
    // per-edge power table, rebuilt per weighting
    std::vector<std::vector<uw>> pw(E, std::vector<uw>(d + 1, 1));
    const uw kFlushAt = uw(1) << 120;
    auto flush = [&](std::size_t i) {
      mpz_class hi((unsigned long)(acc[i] >> 64));
      mpz_class lo((unsigned long)(acc[i] & ~0ull));
      mom[i] += (hi << 64) + lo;
      acc[i] = 0;
    };
    bool ok = for_each_weighting(G, A, r, T, [&](const std::vector<long>& a) {
      for (int e = 0; e < E; ++e) {
        if (a[e] == 0) return;  // every k-vector uses this edge
        uw base = (uw)a[e];
        for (int k = 1; k <= d; ++k) pw[e][k] = pw[e][k - 1] * base;
      }
      for (std::size_t i = 0; i < kvecs.size(); ++i) {
        uw prod = 1;
        for (int e = 0; e < E; ++e) prod *= pw[e][kvecs[i][e]];
        if (acc[i] > kFlushAt - prod) flush(i);
        acc[i] += prod;
      }
    });
    if (!ok) continue;
    for (std::size_t i = 0; i < kvecs.size(); ++i)
      if (acc[i]) flush(i);

    Rat pre = Rat(1, automorphism_order(G));
    {
      mpz_class rb = 1;
      for (int i = 0; i < b1; ++i) rb *= r;
      pre = pre / Rat(rb);
    }
    std::vector<long> abar(n);  // indexed by leg position, value by marking id
    for (int i = 0; i < n; ++i)
      abar[i] = ((A[G.legs[i].first - 1] % r) + r) % r;

    for (std::size_t ki = 0; ki < kvecs.size(); ++ki) {
      if (mom[ki] == 0) continue;
      const auto& kv = kvecs[ki];
      int ktot = std::accumulate(kv.begin(), kv.end(), 0);
      Rat base = pre * Rat(mom[ki]);
      for (int e = 0; e < E; ++e) {
        base = base * inv_factorial(kv[e]);
        if (kv[e] % 2 == 0) base = -base;  // sign (-1)^{k+1}
      }
      std::vector<std::vector<int>> jdists;
      leg_distributions(abar, d - ktot, jdists);
      for (const auto& jd : jdists) {
        Rat cj = base;
        for (int i = 0; i < n; ++i)
          if (jd[i]) {
            mpz_class p = 1;
            for (int t = 0; t < 2 * jd[i]; ++t) p *= abar[i];
            cj = cj * Rat(p) * inv_factorial(jd[i]);
          }
        // expand the binomial power at each edge
        std::vector<int> split(E, 0);
        std::function<void(int, Rat)> emit = [&](int e, Rat c) {
          if (e == E) {
            DecoratedStratum s = DecoratedStratum::plain(G);
            for (int i = 0; i < n; ++i)
              if (jd[i]) s.leg_psi[G.legs[i].first] = jd[i];
            for (int e2 = 0; e2 < E; ++e2) {
              s.he_psi[2 * e2] = split[e2];
              s.he_psi[2 * e2 + 1] = kv[e2] - 1 - split[e2];
            }
            out.add_term(c, std::move(s));
            return;
          }
          for (int l = 0; l <= kv[e] - 1; ++l) {
            split[e] = l;
            emit(e + 1, c * Rat(binomial(kv[e] - 1, l)));
          }
        };
        emit(0, cj);
      }
    }
  }
  out.normalize();
  return out;
}

TautClass p_window(const std::vector<StableGraph>& graphs, int d,
                   const std::vector<int>& A) {
  int B = 2 * d;
  long shift = 0;
  for (int a : A) shift += std::abs(a);
  long base = B + 2 + shift;
  int W = B + 2;  // points per window
  std::vector<long> rs;
  for (int i = 0; i < 2 * W; ++i) rs.push_back(base + i);

  // evaluate at every modulus, indexing coefficients by stratum key
  std::map<std::string, std::pair<DecoratedStratum, std::vector<Rat>>> table;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    TautClass C = p_eval(graphs, d, A, rs[i]);
    for (const auto& t : C.terms()) {
      std::string k = decorated_key(t.strat);
      auto it = table.find(k);
      if (it == table.end())
        it = table.emplace(k, std::make_pair(t.strat,
                                             std::vector<Rat>(rs.size())))
                 .first;
      it->second.second[i] = t.coeff;
    }
  }
  TautClass out;
  for (auto& [key, entry] : table) {
    (void)key;
    auto& [strat, vals] = entry;
    std::vector<std::pair<Rat, Rat>> pts;
    for (int i = 0; i < W; ++i) pts.push_back({Rat(rs[i]), vals[i]});
    UniPoly poly = interpolate(pts);
    for (int i = W; i < 2 * W; ++i)
      if (poly.eval(Rat(rs[i])) != vals[i])
        throw WindowMismatch(
            "stratum coefficient fails to extend across moduli windows");
    Rat c0 = poly.eval(Rat(0));
    if (!c0.is_zero()) out.add_term(c0, strat);
  }
  out.normalize();
  return out;
}

}  // namespace

TautClass p_class_at_r(int g, int d, const std::vector<int>& A, long r) {
  return p_eval(enumerate_stable_bounded(g, int(A.size()), d), d, A, r);
}

TautClass p_class(int g, int d, const std::vector<int>& A) {
  return p_window(enumerate_stable_bounded(g, int(A.size()), d), d, A);
}

TautClass p_contribution(const StableGraph& G, int d,
                         const std::vector<int>& A) {
  return p_window({G}, d, A);
}

TautClass dr_cycle(int g, const std::vector<int>& A) {
  long sum = 0;
  for (int a : A) sum += a;
  if (sum != 0)
    throw std::invalid_argument("dr_cycle: marking values must sum to zero");
  return p_class(g, g, A) * rat_pow(Rat(1, 2), g);
}

TautClass lambda_class(int g) {
  if (g < 2) throw std::invalid_argument("lambda_class: needs genus >= 2");
  Rat c = rat_pow(Rat(1, 2), g);
  if (g % 2) c = -c;
  return p_class(g, g, {}) * c;
}

TautClass expand_pixton_markers(const TautClass& X) {
  static std::map<std::pair<int, int>, TautClass> cache;
  TautClass cur = X;
  cur.normalize();
  for (;;) {
    bool found = false;
    TautClass next;
    for (const auto& t : cur.terms()) {
      int v = -1;
      for (int u = 0; u < t.strat.graph.num_vertices(); ++u)
        if (t.strat.markers[u].pixton) { v = u; break; }
      if (v < 0) {
        next.add_term(t.coeff, t.strat);
        continue;
      }
      found = true;
      if (t.strat.markers[v].pixton != 1)
        throw std::runtime_error("expand: repeated vertex class marker");
      DecoratedStratum s = t.strat;
      s.markers[v].pixton = 0;
      int gv = s.graph.genus[v];
      int nv = int(s.graph.markings_at(v).size() +
                   s.graph.half_edges_at(v).size());
      auto key = std::make_pair(gv, nv);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, p_class(gv, gv, std::vector<int>(nv, 0)))
                 .first;
      next += substitute_vertex(t.coeff, s, v, it->second);
    }
    next.normalize();
    cur = std::move(next);
    if (!found) break;
  }
  return cur;
}

} // namespace taut
