#include "taut/strata.hpp"
#include "taut/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace taut {

// ---------------------------------------------------------------- helpers

static void sort_marker(VertexMarker& m) {
  std::sort(m.lambdas.begin(), m.lambdas.end());
  // lambda_0 is the identity
  m.lambdas.erase(std::remove(m.lambdas.begin(), m.lambdas.end(), 0),
                  m.lambdas.end());
  std::sort(m.chs.begin(), m.chs.end());
}

static void sanitize(DecoratedStratum& s) {
  int V = s.graph.num_vertices();
  int E = s.graph.num_edges();
  s.he_psi.resize(2 * E, 0);
  s.kappas.resize(V);
  s.markers.resize(V);
  for (auto& k : s.kappas) std::sort(k.begin(), k.end());
  for (auto& m : s.markers) sort_marker(m);
  for (auto it = s.leg_psi.begin(); it != s.leg_psi.end();)
    it = it->second == 0 ? s.leg_psi.erase(it) : std::next(it);
}

DecoratedStratum DecoratedStratum::plain(StableGraph g) {
  DecoratedStratum s;
  s.graph = std::move(g);
  sanitize(s);
  return s;
}

int DecoratedStratum::codim() const {
  int d = graph.num_edges();
  for (int x : he_psi) d += x;
  for (auto& [m, e] : leg_psi) { (void)m; d += e; }
  for (auto& ks : kappas)
    for (int a : ks) d += a;
  for (auto& mk : markers) {
    if (mk.lambda_poly)
      throw std::runtime_error("codim: mixed-degree marker");
    for (int j : mk.lambdas) d += j;
    for (int c : mk.chs) d += c;
    if (mk.pixton) {
      // degree-g vertex class
      int v = int(&mk - markers.data());
      d += graph.genus[v] * mk.pixton;
    }
  }
  return d;
}

// ------------------------------------------------------ canonical key

static std::string marker_str(const VertexMarker& m) {
  std::string r;
  for (int j : m.lambdas) r += "L" + std::to_string(j) + "*";
  for (int c : m.chs) r += "C" + std::to_string(c) + "*";
  for (int i = 0; i < m.pixton; ++i) r += "P*";
  if (m.lambda_poly) r += "Lu(" + m.u0.str() + ")*";
  if (!r.empty()) r.pop_back();
  return r;
}

// Per-vertex block: everything attached to a single vertex.  The key
// serialization begins with these blocks sorted, so the minimum over
// relabelings is attained by block-sorted orders; only permutations
// within groups of equal blocks remain free and affect the edge part.
static std::string vertex_block(const DecoratedStratum& s, int v) {
  std::string b = "g" + std::to_string(s.graph.genus[v]) + "|m";
  std::vector<std::pair<int, int>> ms;  // (marking, psi exp)
  for (auto& [mark, vv] : s.graph.legs)
    if (vv == v) ms.push_back({mark, s.leg_exp(mark)});
  std::sort(ms.begin(), ms.end());
  for (auto& [mk, e] : ms)
    b += std::to_string(mk) + "^" + std::to_string(e) + ",";
  b += "|k";
  for (int a : s.kappas[v]) b += std::to_string(a) + ",";
  b += "|x" + marker_str(s.markers[v]);
  return b;
}

namespace {
struct EdgeRec {
  int p, q, x, y;
  bool operator<(const EdgeRec& o) const {
    return std::tie(p, q, x, y) < std::tie(o.p, o.q, o.x, o.y);
  }
};
}  // namespace

static std::string edges_string(const DecoratedStratum& s,
                                const std::vector<int>& relab) {
  std::vector<EdgeRec> recs;
  for (int e = 0; e < s.graph.num_edges(); ++e) {
    int p = relab[s.graph.edges[e].first];
    int q = relab[s.graph.edges[e].second];
    int x = s.he_psi[2 * e], y = s.he_psi[2 * e + 1];
    if (p > q || (p == q && x > y)) { std::swap(p, q); std::swap(x, y); }
    recs.push_back({p, q, x, y});
  }
  std::sort(recs.begin(), recs.end());
  std::string r;
  for (auto& rc : recs)
    r += "(" + std::to_string(rc.p) + "-" + std::to_string(rc.q) + "^" +
         std::to_string(rc.x) + "," + std::to_string(rc.y) + ")";
  return r;
}

std::string decorated_key(const DecoratedStratum& s0) {
  DecoratedStratum s = s0;
  sanitize(s);
  int V = s.graph.num_vertices();
  std::vector<std::string> blocks(V);
  for (int v = 0; v < V; ++v) blocks[v] = vertex_block(s, v);

  // order vertices by block; group equal blocks
  std::vector<int> order(V);
  for (int v = 0; v < V; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return blocks[a] < blocks[b];
  });

  std::string head;
  for (int i = 0; i < V; ++i) head += "[" + blocks[order[i]] + "]";

  // enumerate permutations within equal-block groups, minimizing the
  // edge serialization
  std::vector<std::pair<int, int>> groups;  // [begin, end) in `order`
  for (int i = 0; i < V;) {
    int j = i;
    while (j < V && blocks[order[j]] == blocks[order[i]]) ++j;
    groups.push_back({i, j});
    i = j;
  }
  std::string best;
  std::vector<int> relab(V);
  std::function<void(std::size_t)> rec = [&](std::size_t gi) {
    if (gi == groups.size()) {
      for (int i = 0; i < V; ++i) relab[order[i]] = i;
      std::string es = edges_string(s, relab);
      if (best.empty() || es < best) best = es;
      return;
    }
    auto [b, e] = groups[gi];
    std::sort(order.begin() + b, order.begin() + e);
    do {
      rec(gi + 1);
    } while (std::next_permutation(order.begin() + b, order.begin() + e));
  };
  rec(0);
  return head + "||" + best;
}

// ------------------------------------------------------------ TautClass

TautClass TautClass::fundamental(int g, int n) {
  StableGraph G;
  G.genus = {g};
  for (int i = 1; i <= n; ++i) G.legs.push_back({i, 0});
  if (!G.is_stable()) throw std::invalid_argument("fundamental: unstable");
  TautClass X;
  X.add_term(Rat(1), DecoratedStratum::plain(G));
  return X;
}

void TautClass::add_term(Rat coeff, DecoratedStratum s) {
  if (coeff.is_zero()) return;
  sanitize(s);
  terms_.push_back({std::move(coeff), std::move(s)});
}

TautClass& TautClass::operator+=(const TautClass& o) {
  for (auto& t : o.terms_) terms_.push_back(t);
  return *this;
}

TautClass TautClass::operator*(const Rat& s) const {
  TautClass r = *this;
  if (s.is_zero()) { r.terms_.clear(); return r; }
  for (auto& t : r.terms_) t.coeff = t.coeff * s;
  return r;
}

void TautClass::normalize() {
  std::map<std::string, Term> acc;
  for (auto& t : terms_) {
    std::string k = decorated_key(t.strat);
    auto it = acc.find(k);
    if (it == acc.end()) {
      Term tt = t;
      sanitize(tt.strat);
      acc.emplace(k, std::move(tt));
    } else {
      it->second.coeff = it->second.coeff + t.coeff;
    }
  }
  terms_.clear();
  for (auto& [k, t] : acc) {
    (void)k;
    if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
  }
}

std::string TautClass::str() const {
  if (terms_.empty()) return "0";
  std::string r;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) r += " + ";
    r += terms_[i].coeff.str() + " * " + stratum_str(terms_[i].strat);
  }
  return r;
}

bool same_class(TautClass a, TautClass b) {
  a.normalize();
  b.normalize();
  TautClass d = a + b * Rat(-1);
  d.normalize();
  return d.empty();
}

// ------------------------------------------------------------- divisors

Divisor Divisor::kappa1() { return {Kind::kappa1, 0, 0, {}}; }
Divisor Divisor::psi(int marking) { return {Kind::psi, marking, 0, {}}; }
Divisor Divisor::irr() { return {Kind::irr, 0, 0, {}}; }
Divisor Divisor::sep(int h, std::vector<int> side) {
  std::sort(side.begin(), side.end());
  return {Kind::sep, 0, h, std::move(side)};
}

std::string Divisor::str() const {
  switch (kind) {
    case Kind::kappa1: return "kappa1";
    case Kind::psi: return "psi" + std::to_string(marking);
    case Kind::irr: return "d_irr";
    case Kind::sep: {
      std::string r = "d_" + std::to_string(h) + "{";
      for (std::size_t i = 0; i < side.size(); ++i)
        r += (i ? "," : "") + std::to_string(side[i]);
      return r + "}";
    }
  }
  return "?";
}

static bool edge_matches(const StableGraph& G, int e, const Divisor& D) {
  EdgeType t = classify_edge(G, e);
  if (D.kind == Divisor::Kind::irr) return !t.separating;
  if (!t.separating) return false;
  int g = G.total_genus();
  std::vector<int> all;
  for (auto& [m, v] : G.legs) { (void)v; all.push_back(m); }
  std::sort(all.begin(), all.end());
  std::vector<int> comp;
  std::set_difference(all.begin(), all.end(), D.side.begin(), D.side.end(),
                      std::back_inserter(comp));
  return (t.genus_side == D.h && t.markings_side == D.side) ||
         (t.genus_side == g - D.h && t.markings_side == comp);
}

// Distribute the decorations of the split vertex over the two halves.
// `va` keeps its index, `vb` is the new last vertex.  Psi exponents ride
// with their (persistent) half-edge ids and legs, so only kappa, lambda,
// ch and the Chern-polynomial marker need handling here.
static void distribute_split(const Rat& coeff, const DecoratedStratum& base,
                             int va, int vb,
                             const std::vector<int>& kaps,
                             const VertexMarker& mk, TautClass& out) {
  struct State {
    Rat c;
    std::vector<int> ka, kb;
    VertexMarker ma, mb;
  };
  std::vector<State> states{{coeff, {}, {}, {}, {}}};
  if (mk.pixton)
    throw std::runtime_error("cannot degenerate a vertex carrying an "
                             "unexpanded vertex class marker");
  for (int a : kaps) {
    std::vector<State> next;
    for (auto& st : states) {
      State s1 = st; s1.ka.push_back(a); next.push_back(std::move(s1));
      State s2 = st; s2.kb.push_back(a); next.push_back(std::move(s2));
    }
    states = std::move(next);
  }
  for (int c : mk.chs) {
    std::vector<State> next;
    for (auto& st : states) {
      State s1 = st; s1.ma.chs.push_back(c); next.push_back(std::move(s1));
      State s2 = st; s2.mb.chs.push_back(c); next.push_back(std::move(s2));
    }
    states = std::move(next);
  }
  for (int j : mk.lambdas) {
    std::vector<State> next;
    for (auto& st : states)
      for (int a = 0; a <= j; ++a) {
        State s = st;
        if (a) s.ma.lambdas.push_back(a);
        if (j - a) s.mb.lambdas.push_back(j - a);
        next.push_back(std::move(s));
      }
    states = std::move(next);
  }
  for (auto& st : states) {
    if (mk.lambda_poly) {
      st.ma.lambda_poly = st.mb.lambda_poly = true;
      st.ma.u0 = st.mb.u0 = mk.u0;
    }
    DecoratedStratum s = base;
    s.kappas[va] = st.ka;
    s.kappas[vb] = st.kb;
    s.markers[va] = st.ma;
    s.markers[vb] = st.mb;
    // drop lambda_j beyond the vertex genus
    bool dead = false;
    for (int v : {va, vb})
      for (int j : s.markers[v].lambdas)
        if (j > s.graph.genus[v]) dead = true;
    if (!dead) out.add_term(st.c, std::move(s));
  }
}

TautClass multiply_divisor(const TautClass& X, const Divisor& D) {
  TautClass out;
  Rat half(1, 2);
  for (auto& t : X.terms()) {
    const DecoratedStratum& S = t.strat;
    const StableGraph& G = S.graph;
    if (D.kind == Divisor::Kind::kappa1) {
      for (int v = 0; v < G.num_vertices(); ++v) {
        DecoratedStratum s = S;
        s.kappas[v].push_back(1);
        out.add_term(t.coeff, std::move(s));
      }
      continue;
    }
    if (D.kind == Divisor::Kind::psi) {
      DecoratedStratum s = S;
      s.leg_psi[D.marking] += 1;
      out.add_term(t.coeff, std::move(s));
      continue;
    }
    // boundary divisor: excess parts over matching edges
    for (int e = 0; e < G.num_edges(); ++e) {
      if (!edge_matches(G, e, D)) continue;
      for (int side = 0; side < 2; ++side) {
        DecoratedStratum s = S;
        s.he_psi[2 * e + side] += 1;
        out.add_term(t.coeff * Rat(-1), std::move(s));
      }
    }
    // degenerations of a single vertex
    for (int v = 0; v < G.num_vertices(); ++v) {
      if (G.genus[v] >= 1) {  // non-separating pinch
        StableGraph H = with_loop_at(G, v);
        if (H.is_stable() && edge_matches(H, H.num_edges() - 1, D)) {
          if (S.markers[v].pixton)
            throw std::runtime_error("cannot degenerate a vertex carrying an "
                                     "unexpanded vertex class marker");
          DecoratedStratum s = S;
          s.graph = H;
          sanitize(s);
          out.add_term(t.coeff * half, std::move(s));
        }
      }
      std::vector<int> ms, hs;
      for (auto& [mark, vv] : G.legs)
        if (vv == v) ms.push_back(mark);
      for (int h = 0; h < 2 * G.num_edges(); ++h)
        if (G.he_vertex(h) == v) hs.push_back(h);
      int nm = int(ms.size()), nh = int(hs.size());
      for (int g1 = 0; g1 <= G.genus[v]; ++g1)
        for (int mm = 0; mm < (1 << nm); ++mm)
          for (int hm = 0; hm < (1 << nh); ++hm) {
            std::vector<int> mkeep, hkeep;
            for (int i = 0; i < nm; ++i)
              if (mm >> i & 1) mkeep.push_back(ms[i]);
            for (int i = 0; i < nh; ++i)
              if (hm >> i & 1) hkeep.push_back(hs[i]);
            StableGraph H = with_split_vertex(G, v, g1, mkeep, hkeep);
            if (!H.is_stable()) continue;
            if (!edge_matches(H, H.num_edges() - 1, D)) continue;
            DecoratedStratum base = S;
            base.graph = H;
            sanitize(base);
            distribute_split(t.coeff * half, base, v, H.num_vertices() - 1,
                             S.kappas[v], S.markers[v], out);
          }
    }
  }
  out.normalize();
  return out;
}

TautClass multiply_kappa(const TautClass& X, int a) {
  if (a < 1) throw std::invalid_argument("multiply_kappa: index must be >= 1");
  TautClass out;
  for (auto& t : X.terms())
    for (int v = 0; v < t.strat.graph.num_vertices(); ++v) {
      DecoratedStratum s = t.strat;
      s.kappas[v].push_back(a);
      out.add_term(t.coeff, std::move(s));
    }
  out.normalize();
  return out;
}

TautClass multiply_lambda(const TautClass& X, int j) {
  TautClass out;
  for (auto& t : X.terms()) {
    int V = t.strat.graph.num_vertices();
    // compositions of j over the vertices, truncated by vertex genus
    std::vector<int> parts(V, 0);
    std::function<void(int, int)> rec = [&](int v, int rest) {
      if (v == V) {
        if (rest) return;
        DecoratedStratum s = t.strat;
        for (int w = 0; w < V; ++w)
          if (parts[w]) s.markers[w].lambdas.push_back(parts[w]);
        out.add_term(t.coeff, std::move(s));
        return;
      }
      int cap = std::min(rest, t.strat.graph.genus[v]);
      for (int a = 0; a <= cap; ++a) {
        parts[v] = a;
        rec(v + 1, rest - a);
      }
      parts[v] = 0;
    };
    rec(0, j);
  }
  out.normalize();
  return out;
}

// ------------------------------------------------------- substitution

TautClass substitute_vertex(const Rat& coeff, const DecoratedStratum& s, int v,
                            const TautClass& inner) {
  const StableGraph& G = s.graph;
  int Vo = G.num_vertices(), Eo = G.num_edges();
  // attachment slots of v: legs sorted by marking, then half-edges ascending
  std::vector<int> slot_legs, slot_hes;
  for (auto& [m, vv] : G.legs)
    if (vv == v) slot_legs.push_back(m);
  std::sort(slot_legs.begin(), slot_legs.end());
  for (int h = 0; h < 2 * Eo; ++h)
    if (G.he_vertex(h) == v) slot_hes.push_back(h);
  int nv = int(slot_legs.size() + slot_hes.size());

  TautClass out;
  for (auto& it : inner.terms()) {
    const DecoratedStratum& I = it.strat;
    const StableGraph& Gi = I.graph;
    if (int(Gi.legs.size()) != nv)
      throw std::invalid_argument("substitute_vertex: marking count mismatch");
    int Vi = Gi.num_vertices();
    // slot s (1-based) sits at inner vertex slot_vertex[s]
    std::vector<int> slot_vertex(nv + 1, -1), slot_exp(nv + 1, 0);
    for (auto& [m, w] : Gi.legs) {
      if (m < 1 || m > nv || slot_vertex[m] != -1)
        throw std::invalid_argument("substitute_vertex: bad inner markings");
      slot_vertex[m] = w;
      slot_exp[m] = I.leg_exp(m);
    }
    auto omap = [&](int u) { return u - (u > v ? 1 : 0); };  // outer vertices
    auto imap = [&](int w) { return (Vo - 1) + w; };          // inner vertices
    auto he_slot = [&](int h) {  // slot number of outer half-edge h at v
      int si = int(std::lower_bound(slot_hes.begin(), slot_hes.end(), h) -
                   slot_hes.begin());
      return int(slot_legs.size()) + si + 1;
    };

    DecoratedStratum R;
    StableGraph& H = R.graph;
    for (int u = 0; u < Vo; ++u)
      if (u != v) H.genus.push_back(G.genus[u]);
    for (int w = 0; w < Vi; ++w) H.genus.push_back(Gi.genus[w]);
    R.kappas.resize(Vo - 1 + Vi);
    R.markers.resize(Vo - 1 + Vi);
    for (int u = 0; u < Vo; ++u)
      if (u != v) {
        R.kappas[omap(u)] = s.kappas[u];
        R.markers[omap(u)] = s.markers[u];
      }
    for (int w = 0; w < Vi; ++w) {
      R.kappas[imap(w)] = I.kappas[w];
      R.markers[imap(w)] = I.markers[w];
    }
    // legs
    for (std::size_t li = 0; li < G.legs.size(); ++li) {
      auto [m, vv] = G.legs[li];
      if (vv != v) {
        R.leg_psi[m] = s.leg_exp(m);
        H.legs.push_back({m, omap(vv)});
      } else {
        int slot = int(std::lower_bound(slot_legs.begin(), slot_legs.end(), m) -
                       slot_legs.begin()) + 1;
        H.legs.push_back({m, imap(slot_vertex[slot])});
        R.leg_psi[m] = s.leg_exp(m) + slot_exp[slot];
      }
    }
    // outer edges first (half-edge ids persist), then inner edges
    R.he_psi.assign(2 * (Eo + Gi.num_edges()), 0);
    for (int e = 0; e < Eo; ++e) {
      auto [a, b] = G.edges[e];
      int na = a, nb = b;
      na = (a == v) ? imap(slot_vertex[he_slot(2 * e)]) : omap(a);
      nb = (b == v) ? imap(slot_vertex[he_slot(2 * e + 1)]) : omap(b);
      H.edges.push_back({na, nb});
      R.he_psi[2 * e] =
          s.he_psi[2 * e] + (a == v ? slot_exp[he_slot(2 * e)] : 0);
      R.he_psi[2 * e + 1] =
          s.he_psi[2 * e + 1] + (b == v ? slot_exp[he_slot(2 * e + 1)] : 0);
    }
    for (int e = 0; e < Gi.num_edges(); ++e) {
      auto [a, b] = Gi.edges[e];
      H.edges.push_back({imap(a), imap(b)});
      R.he_psi[2 * (Eo + e)] = I.he_psi[2 * e];
      R.he_psi[2 * (Eo + e) + 1] = I.he_psi[2 * e + 1];
    }
    // decorations that sat on v distribute over the inner vertices
    TautClass partial;
    partial.add_term(coeff * it.coeff, std::move(R));
    for (int a : s.kappas[v]) {
      TautClass next;
      for (auto& pt : partial.terms())
        for (int w = 0; w < Vi; ++w) {
          DecoratedStratum q = pt.strat;
          q.kappas[imap(w)].push_back(a);
          next.add_term(pt.coeff, std::move(q));
        }
      partial = std::move(next);
    }
    const VertexMarker& mk = s.markers[v];
    if (mk.pixton)
      throw std::runtime_error("substitute_vertex: unexpanded marker at v");
    for (int c : mk.chs) {
      TautClass next;
      for (auto& pt : partial.terms())
        for (int w = 0; w < Vi; ++w) {
          DecoratedStratum q = pt.strat;
          q.markers[imap(w)].chs.push_back(c);
          next.add_term(pt.coeff, std::move(q));
        }
      partial = std::move(next);
    }
    for (int j : mk.lambdas) {
      TautClass next;
      for (auto& pt : partial.terms()) {
        std::vector<int> parts(Vi, 0);
        std::function<void(int, int)> rec = [&](int w, int rest) {
          if (w == Vi) {
            if (rest) return;
            DecoratedStratum q = pt.strat;
            bool dead = false;
            for (int u = 0; u < Vi; ++u)
              if (parts[u]) {
                if (parts[u] > Gi.genus[u]) { dead = true; break; }
                q.markers[imap(u)].lambdas.push_back(parts[u]);
              }
            if (!dead) next.add_term(pt.coeff, std::move(q));
            return;
          }
          for (int a = 0; a <= rest; ++a) {
            parts[w] = a;
            rec(w + 1, rest - a);
          }
          parts[w] = 0;
        };
        rec(0, j);
      }
      partial = std::move(next);
    }
    if (mk.lambda_poly) {
      TautClass next;
      for (auto& pt : partial.terms()) {
        DecoratedStratum q = pt.strat;
        for (int w = 0; w < Vi; ++w) {
          q.markers[imap(w)].lambda_poly = true;
          q.markers[imap(w)].u0 = mk.u0;
        }
        next.add_term(pt.coeff, std::move(q));
      }
      partial = std::move(next);
    }
    out += partial;
  }
  out.normalize();
  return out;
}

// --------------------------------------------------- forgetful pushforward

// Pushforward of one stratum along the map forgetting marking m.
static void forget_term(const Rat& coeff, const DecoratedStratum& S, int m,
                        TautClass& out) {
  const StableGraph& G = S.graph;
  int v = -1;
  for (auto& [mk, vv] : G.legs)
    if (mk == m) v = vv;
  if (v < 0) throw std::invalid_argument("forget_marking: no such marking");
  int nv_legs = 0, deg = 0;
  std::vector<int> hs;
  for (auto& [mk, vv] : G.legs)
    if (vv == v) ++nv_legs;
  for (int h = 0; h < 2 * G.num_edges(); ++h)
    if (G.he_vertex(h) == v) { hs.push_back(h); ++deg; }

  if (G.genus[v] == 0 && nv_legs + deg == 3) {
    // the vertex destabilizes: contract it into the rest of the graph
    std::vector<std::pair<int, int>> other_legs;  // (marking, psi)
    for (auto& [mk, vv] : G.legs)
      if (vv == v && mk != m) other_legs.push_back({mk, S.leg_exp(mk)});
    // any psi at the contracted vertex kills the term (a point factor)
    if (S.leg_exp(m)) return;
    for (auto& [mk, e] : other_legs) { (void)mk; if (e) return; }
    for (int h : hs)
      if (S.he_psi[h]) return;
    if (!S.kappas[v].empty() || !S.markers[v].empty()) {
      // kappa_a (a >= 1) and lambda/ch markers vanish on a point; a
      // Chern-polynomial marker restricts to 1
      for (int a : S.kappas[v]) { (void)a; return; }
      const VertexMarker& mk2 = S.markers[v];
      if (!mk2.lambdas.empty() || !mk2.chs.empty() || mk2.pixton) return;
    }
    DecoratedStratum R;
    StableGraph& H = R.graph;
    auto vmap = [&](int u) { return u - (u > v ? 1 : 0); };
    for (int u = 0; u < G.num_vertices(); ++u)
      if (u != v) H.genus.push_back(G.genus[u]);
    R.kappas.resize(H.genus.size());
    R.markers.resize(H.genus.size());
    for (int u = 0; u < G.num_vertices(); ++u)
      if (u != v) {
        R.kappas[vmap(u)] = S.kappas[u];
        R.markers[vmap(u)] = S.markers[u];
      }
    if (deg == 1) {
      // one leg j != m plus one half-edge: leg j migrates across the edge
      if (other_legs.size() != 1)
        throw std::runtime_error("forget_marking: malformed contraction");
      int h = hs[0], hp = h ^ 1;
      int e = h / 2;
      int w = G.he_vertex(hp);
      int j = other_legs[0].first;
      for (auto& [mk, vv] : G.legs)
        if (mk != m && vv != v) {
          H.legs.push_back({mk, vmap(vv)});
          R.leg_psi[mk] = S.leg_exp(mk);
        }
      H.legs.push_back({j, vmap(w)});
      R.leg_psi[j] = S.he_psi[hp];  // node cotangent becomes the leg's
      for (int e2 = 0; e2 < G.num_edges(); ++e2) {
        if (e2 == e) continue;
        H.edges.push_back({vmap(G.edges[e2].first), vmap(G.edges[e2].second)});
        R.he_psi.push_back(S.he_psi[2 * e2]);
        R.he_psi.push_back(S.he_psi[2 * e2 + 1]);
      }
      out.add_term(coeff, std::move(R));
      return;
    }
    if (deg == 2) {
      // two half-edges of distinct edges: the edges fuse into one
      int h1 = hs[0], h2 = hs[1];
      if (h1 / 2 == h2 / 2)
        throw std::runtime_error("forget_marking: isolated pinched vertex");
      int p1 = h1 ^ 1, p2 = h2 ^ 1;
      int w1 = G.he_vertex(p1), w2 = G.he_vertex(p2);
      for (auto& [mk, vv] : G.legs)
        if (mk != m) {
          H.legs.push_back({mk, vmap(vv)});
          R.leg_psi[mk] = S.leg_exp(mk);
        }
      H.edges.push_back({vmap(w1), vmap(w2)});
      R.he_psi.push_back(S.he_psi[p1]);
      R.he_psi.push_back(S.he_psi[p2]);
      for (int e2 = 0; e2 < G.num_edges(); ++e2) {
        if (e2 == h1 / 2 || e2 == h2 / 2) continue;
        H.edges.push_back({vmap(G.edges[e2].first), vmap(G.edges[e2].second)});
        R.he_psi.push_back(S.he_psi[2 * e2]);
        R.he_psi.push_back(S.he_psi[2 * e2 + 1]);
      }
      out.add_term(coeff, std::move(R));
      return;
    }
    throw std::runtime_error("forget_marking: disconnected contraction");
  }

  // stable case: integrate out the forgotten point on the vertex factor
  DecoratedStratum base = S;
  base.leg_psi.erase(m);
  {
    StableGraph H = G;
    H.legs.clear();
    for (auto& [mk, vv] : G.legs)
      if (mk != m) H.legs.push_back({mk, vv});
    base.graph = H;
  }
  int e = S.leg_exp(m);
  const std::vector<int>& K = S.kappas[v];
  int r = int(K.size());
  // kappa classes at v correspond upstairs to (pulled-back kappa + psi_m^a);
  // expanding the product and pushing forward gives the subset sum below
  for (int mask = 0; mask < (1 << r); ++mask) {
    int tot = e;
    std::vector<int> rest;
    for (int i = 0; i < r; ++i) {
      if (mask >> i & 1) tot += K[i];
      else rest.push_back(K[i]);
    }
    if (tot >= 1) {
      DecoratedStratum q = base;
      rest.push_back(tot - 1);
      q.kappas[v] = rest;
      out.add_term(coeff, std::move(q));
    } else {
      // mask == 0 and e == 0: no psi_m factor at all; the fiber
      // integral reduces each cotangent power at v by one
      for (auto& [mk, ex] : S.leg_psi) {
        if (mk == m || ex == 0) continue;
        int vv = -1;
        for (auto& [mk2, u] : G.legs)
          if (mk2 == mk) vv = u;
        if (vv != v) continue;
        DecoratedStratum q = base;
        q.leg_psi[mk] = ex - 1;
        out.add_term(coeff, std::move(q));
      }
      for (int h : hs) {
        if (S.he_psi[h] == 0) continue;
        DecoratedStratum q = base;
        q.he_psi[h] = S.he_psi[h] - 1;
        out.add_term(coeff, std::move(q));
      }
    }
  }
}

TautClass forget_marking(const TautClass& X, int m) {
  TautClass out;
  for (auto& t : X.terms()) forget_term(t.coeff, t.strat, m, out);
  out.normalize();
  return out;
}

// ------------------------------------------------------------- integrate

static Rat vertex_integral(const DecoratedStratum& s, int v) {
  std::vector<int> psis;
  for (auto& [m, vv] : s.graph.legs)
    if (vv == v) psis.push_back(s.leg_exp(m));
  for (int h = 0; h < 2 * s.graph.num_edges(); ++h)
    if (s.graph.he_vertex(h) == v) psis.push_back(s.he_psi[h]);
  const VertexMarker& mk = s.markers[v];
  if (mk.pixton)
    throw std::runtime_error("integrate: unexpanded vertex class marker");
  int g = s.graph.genus[v];
  if (!mk.lambda_poly)
    return hodge_integral(g, psis, s.kappas[v], mk.lambdas, mk.chs);
  Rat total(0);
  Rat u_pow(1);
  for (int j = 0; j <= g; ++j) {
    std::vector<int> ls = mk.lambdas;
    if (j) ls.push_back(j);
    total = total + u_pow * hodge_integral(g, psis, s.kappas[v], ls, mk.chs);
    u_pow = u_pow * mk.u0;
  }
  return total;
}

Rat integrate(const TautClass& X) {
  Rat total(0);
  for (auto& t : X.terms()) {
    Rat prod = t.coeff;
    for (int v = 0; v < t.strat.graph.num_vertices() && !prod.is_zero(); ++v)
      prod = prod * vertex_integral(t.strat, v);
    total = total + prod;
  }
  return total;
}

// ----------------------------------------------------------- text format

std::string stratum_str(const DecoratedStratum& s) {
  const StableGraph& G = s.graph;
  int g = G.total_genus(), n = int(G.legs.size());
  std::ostringstream o;
  bool trivial = G.num_vertices() == 1 && G.num_edges() == 0;
  if (trivial) {
    o << "M(" << g << "," << n << ")";
  } else {
    o << "G(" << g << "," << n << ")[";
    for (int v = 0; v < G.num_vertices(); ++v)
      o << (v ? "," : "") << "v" << v << ":" << G.genus[v];
    if (!G.legs.empty()) {
      o << "; legs ";
      auto legs = G.legs;
      std::sort(legs.begin(), legs.end());
      for (std::size_t i = 0; i < legs.size(); ++i)
        o << (i ? "," : "") << legs[i].first << ":v" << legs[i].second;
    }
    if (!G.edges.empty()) {
      o << "; edges ";
      for (int e = 0; e < G.num_edges(); ++e)
        o << (e ? "," : "") << "(v" << G.edges[e].first << ",v"
          << G.edges[e].second << ")";
    }
    o << "]";
  }
  {
    std::string ps;
    auto lp = s.leg_psi;
    for (auto& [m, ex] : lp)
      if (ex) ps += "L" + std::to_string(m) + ":" + std::to_string(ex) + ",";
    for (int h = 0; h < 2 * G.num_edges(); ++h)
      if (s.he_psi[h]) ps += "H" + std::to_string(h) + ":" + std::to_string(s.he_psi[h]) + ",";
    if (!ps.empty()) { ps.pop_back(); o << " psi{" << ps << "}"; }
  }
  {
    std::string ks;
    for (int v = 0; v < G.num_vertices(); ++v) {
      if (s.kappas[v].empty()) continue;
      ks += "v" + std::to_string(v) + ":[";
      for (std::size_t i = 0; i < s.kappas[v].size(); ++i)
        ks += (i ? "," : "") + std::to_string(s.kappas[v][i]);
      ks += "],";
    }
    if (!ks.empty()) { ks.pop_back(); o << " kappa{" << ks << "}"; }
  }
  {
    std::string xs;
    for (int v = 0; v < G.num_vertices(); ++v) {
      if (s.markers[v].empty()) continue;
      xs += "v" + std::to_string(v) + ":" + marker_str(s.markers[v]) + ",";
    }
    if (!xs.empty()) { xs.pop_back(); o << " marker{" << xs << "}"; }
  }
  return o.str();
}

// -- parsing ---------------------------------------------------------

namespace {
struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  void ws() { while (i < s.size() && isspace((unsigned char)s[i])) ++i; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at position " +
                                std::to_string(i) + " near '" +
                                s.substr(i, 20) + "': " + what);
  }
  bool eat(const std::string& tok) {
    ws();
    if (s.compare(i, tok.size(), tok) == 0) { i += tok.size(); return true; }
    return false;
  }
  void expect(const std::string& tok) {
    if (!eat(tok)) fail("expected '" + tok + "'");
  }
  long integer() {
    ws();
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    std::size_t k = j;
    while (k < s.size() && isdigit((unsigned char)s[k])) ++k;
    if (k == j) fail("integer expected");
    long v = std::stol(s.substr(i, k - i));
    i = k;
    return v;
  }
  Rat rational() {
    long num = integer();
    if (eat("/")) return Rat(num, integer());
    return Rat(num);
  }
  bool peek(char c) {
    ws();
    return i < s.size() && s[i] == c;
  }
  bool done() {
    ws();
    return i >= s.size();
  }
};
}  // namespace

static int parse_vref(Cursor& c) {
  c.expect("v");
  return int(c.integer());
}

static void require_leg(const StableGraph& G, int m, Cursor& c) {
  for (const auto& l : G.legs)
    if (l.first == m) return;
  c.fail("unknown marking " + std::to_string(m));
}

static DecoratedStratum parse_stratum(Cursor& c) {
  DecoratedStratum s;
  StableGraph& G = s.graph;
  if (c.eat("M")) {
    c.expect("(");
    int g = int(c.integer());
    c.expect(",");
    int n = int(c.integer());
    c.expect(")");
    G.genus = {g};
    for (int i = 1; i <= n; ++i) G.legs.push_back({i, 0});
  } else {
    c.expect("G");
    c.expect("(");
    c.integer();
    c.expect(",");
    c.integer();
    c.expect(")");
    c.expect("[");
    do {
      int v = parse_vref(c);
      c.expect(":");
      int g = int(c.integer());
      if (v != int(G.genus.size())) c.fail("vertices must be v0,v1,...");
      G.genus.push_back(g);
    } while (c.eat(","));
    if (c.eat(";")) {
      if (c.eat("legs")) {
        do {
          int m = int(c.integer());
          c.expect(":");
          G.legs.push_back({m, parse_vref(c)});
        } while (c.eat(","));
        c.eat(";");
      }
      if (c.eat("edges")) {
        do {
          c.expect("(");
          int a = parse_vref(c);
          c.expect(",");
          int b = parse_vref(c);
          c.expect(")");
          G.edges.push_back({a, b});
        } while (c.eat(","));
      }
    }
    c.expect("]");
  }
  sanitize(s);
  c.eat("1");  // optional explicit unit decoration
  if (c.eat("psi")) {
    c.expect("{");
    do {
      if (c.eat("L")) {
        int m = int(c.integer());
        c.expect(":");
        require_leg(G, m, c);
        s.leg_psi[m] = int(c.integer());
      } else if (c.eat("H")) {
        int h = int(c.integer());
        c.expect(":");
        if (h < 0 || h >= 2 * G.num_edges()) c.fail("half-edge out of range");
        s.he_psi[h] = int(c.integer());
      } else {
        int m = int(c.integer());  // bare keys name markings
        c.expect(":");
        require_leg(G, m, c);
        s.leg_psi[m] = int(c.integer());
      }
    } while (c.eat(","));
    c.expect("}");
  }
  if (c.eat("kappa")) {
    c.expect("{");
    do {
      int v = parse_vref(c);
      c.expect(":");
      c.expect("[");
      do {
        s.kappas.at(v).push_back(int(c.integer()));
      } while (c.eat(","));
      c.expect("]");
    } while (c.eat(","));
    c.expect("}");
  }
  if (c.eat("marker")) {
    c.expect("{");
    do {
      int v = parse_vref(c);
      c.expect(":");
      do {
        if (c.eat("Lu")) {
          c.expect("(");
          s.markers.at(v).lambda_poly = true;
          s.markers.at(v).u0 = c.rational();
          c.expect(")");
        } else if (c.eat("L")) {
          s.markers.at(v).lambdas.push_back(int(c.integer()));
        } else if (c.eat("C")) {
          s.markers.at(v).chs.push_back(int(c.integer()));
        } else {
          c.expect("P");
          s.markers.at(v).pixton += 1;
        }
      } while (c.eat("*"));
    } while (c.eat(","));
    c.expect("}");
  }
  sanitize(s);
  if (!G.is_stable()) c.fail("unstable graph");
  return s;
}

TautClass parse_taut(const std::string& text) {
  Cursor c{text};
  TautClass X;
  if (c.eat("0") && c.done()) return X;
  c.i = 0;
  bool first = true;
  while (!c.done()) {
    Rat sign(1);
    if (!first) {
      if (c.eat("+")) sign = Rat(1);
      else if (c.eat("-")) sign = Rat(-1);
      else c.fail("expected '+' or '-' between terms");
    }
    first = false;
    Rat coeff(1);
    c.ws();
    if (c.i < c.s.size() &&
        (isdigit((unsigned char)c.s[c.i]) || c.s[c.i] == '-')) {
      coeff = c.rational();
      c.expect("*");
    }
    X.add_term(sign * coeff, parse_stratum(c));
  }
  X.normalize();
  return X;
}

} // namespace taut
