#include "taut/relations.hpp"

#include "taut/bernoulli.hpp"
#include "taut/pixton.hpp"

#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace taut {

namespace {

// Compositions of `total` into E parts, every part >= 1.
std::vector<std::vector<int>> edge_exponents(int E, int total) {
  std::vector<std::vector<int>> out;
  if (E < 1 || total < E) return out;
  std::vector<int> cur(E, 1);
  std::function<void(int, int)> go = [&](int e, int rem) {
    if (e == E - 1) {
      cur[e] = rem;
      out.push_back(cur);
      return;
    }
    for (int k = 1; k <= rem - (E - 1 - e); ++k) {
      cur[e] = k;
      go(e + 1, rem - k);
    }
  };
  go(0, total);
  return out;
}

// Accumulate, for one cycle-shaped graph, the sum over edge exponent
// vectors k (sum k = ksum, k_e >= 1) of
//   pre * prod_e (-1/k_e!) (psi_h + psi_h')^{k_e - 1},
// expanded binomially over the two half-edge slots of every edge.
// With `markers` set, every vertex also receives the degree-g(v)
// weightless vertex class marker.
void add_cycle_terms(TautClass& out, const StableGraph& G, const Rat& pre,
                     int ksum, bool markers) {
  int E = G.num_edges();
  for (const auto& kv : edge_exponents(E, ksum)) {
    Rat base = pre;
    for (int e = 0; e < E; ++e) base *= -inv_factorial(kv[e]);
    std::vector<int> split(E, 0);
    std::function<void(int, Rat)> emit = [&](int e, Rat c) {
      if (e == E) {
        DecoratedStratum s = DecoratedStratum::plain(G);
        for (int i = 0; i < E; ++i) {
          s.he_psi[2 * i] = split[i];
          s.he_psi[2 * i + 1] = kv[i] - 1 - split[i];
        }
        if (markers)
          for (auto& m : s.markers) m.pixton = 1;
        out.add_term(c, s);
        return;
      }
      for (int l = 0; l <= kv[e] - 1; ++l) {
        split[e] = l;
        emit(e + 1, c * Rat(binomial(kv[e] - 1, l)));
      }
    };
    emit(0, base);
  }
}

StableGraph one_loop_graph(int g) {
  return StableGraph{{g}, {}, {{0, 0}}};
}

}  // namespace

TautClass circular_contribution(const StableGraph& G) {
  int g = G.total_genus();
  TautClass out;
  Rat pre = bernoulli(2 * unsigned(g)) / Rat(automorphism_order(G));
  add_cycle_terms(out, G, pre, g, false);
  out.normalize();
  return out;
}

TautClass circular_marker_sum(int genus) {
  TautClass out;
  for (const StableGraph& G : circular_graphs(genus)) {
    Rat pre = Rat(1, automorphism_order(G));
    add_cycle_terms(out, G, pre, genus, true);
  }
  out.normalize();
  return out;
}

Relation build_lambda_product(int g) {
  if (g < 2)
    throw std::invalid_argument("build_lambda_product: needs genus >= 2");
  Relation R;
  R.g = g;
  R.n = 0;
  DecoratedStratum triv = DecoratedStratum::plain(StableGraph{{g}, {}, {}});
  triv.markers[0].lambdas = {g - 1, g};
  R.lhs.add_term(Rat(1), triv);
  R.lhs.normalize();
  Rat pre = -bernoulli(2 * unsigned(g)) / rat_pow(Rat(2), 2 * g - 1);
  R.rhs = circular_marker_sum(g) * pre;
  R.rhs.normalize();
  return R;
}

Relation build_loop_pushforward(int g) {
  if (g < 1)
    throw std::invalid_argument("build_loop_pushforward: needs genus >= 1");
  Relation R;
  R.g = g + 1;
  R.n = 0;
  Rat c = rat_pow(Rat(2), 2 * g - 1) / Rat(g + 1);
  if (g % 2 == 0) c = -c;  // sign (-1)^(g+1) sits in the denominator
  StableGraph loop = one_loop_graph(g);
  for (int a = 0; a <= 2 * g; ++a) {
    int b = 2 * g - a;
    DecoratedStratum s = DecoratedStratum::plain(loop);
    s.he_psi[0] = a;
    s.he_psi[1] = b;
    R.lhs.add_term((a % 2) ? -c : c, s);
  }
  R.lhs.normalize();
  R.rhs = expand_pixton_markers(circular_marker_sum(g + 1));
  R.rhs.normalize();
  return R;
}

TautClass build_pushforward_family(int g, int r) {
  if (g < 1 || r < 0)
    throw std::invalid_argument(
        "build_pushforward_family: needs genus >= 1, r >= 0");
  if (r == 0) {
    Relation R = build_loop_pushforward(g);
    TautClass out = R.lhs + R.rhs * Rat(-1);
    out.normalize();
    return out;
  }
  TautClass out;
  StableGraph loop = one_loop_graph(g);
  for (int a = 0; a <= 2 * g + r; ++a) {
    int b = 2 * g + r - a;
    DecoratedStratum s = DecoratedStratum::plain(loop);
    s.he_psi[0] = a;
    s.he_psi[1] = b;
    out.add_term((a % 2) ? Rat(-1) : Rat(1), s);
  }
  out.normalize();
  return out;
}

TautClass build_two_point_relation(int g) {
  if (g < 1)
    throw std::invalid_argument("build_two_point_relation: needs genus >= 1");
  TautClass out;
  StableGraph triv{{g + 1}, {{1, 0}, {2, 0}}, {}};
  for (int m = 1; m <= 2; ++m) {
    DecoratedStratum s = DecoratedStratum::plain(triv);
    s.leg_psi[m] = 2 * g + 3;
    out.add_term(Rat(-1), s);
  }
  for (int g1 = 1; g1 <= g; ++g1) {
    int g2 = g + 1 - g1;
    // marking i sits on the genus-g_i side; the node psi on side i is
    // the half-edge at that vertex
    StableGraph B{{g1, g2}, {{1, 0}, {2, 1}}, {{0, 1}}};
    for (int a = 0; a <= 2 * g + 2; ++a) {
      int b = 2 * g + 2 - a;
      DecoratedStratum s = DecoratedStratum::plain(B);
      s.he_psi[0] = a;
      s.he_psi[1] = b;
      out.add_term((a % 2) ? Rat(-1) : Rat(1), s);
    }
  }
  out.normalize();
  return out;
}

std::vector<Divisor> divisor_probes(int g, int n) {
  std::vector<Divisor> out;
  out.push_back(Divisor::kappa1());
  if (g >= 1) out.push_back(Divisor::irr());
  std::set<std::string> seen;
  for (int h = 0; h <= g; ++h) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> S, Sc;
      for (int i = 1; i <= n; ++i)
        (mask & (1u << (i - 1)) ? S : Sc).push_back(i);
      int hc = g - h;
      if (2 * h - 2 + int(S.size()) + 1 <= 0) continue;
      if (2 * hc - 2 + int(Sc.size()) + 1 <= 0) continue;
      Divisor D = Divisor::sep(h, S);
      Divisor Dc = Divisor::sep(hc, Sc);
      std::string key = std::min(D.str(), Dc.str());
      if (seen.insert(key).second)
        out.push_back(D.str() <= Dc.str() ? D : Dc);
    }
  }
  for (int m = 1; m <= n; ++m) out.push_back(Divisor::psi(m));
  return out;
}

RelationReport verify_zero(const TautClass& c, int probe_degree,
                           const std::string& id) {
  if (probe_degree < 0)
    throw std::invalid_argument("verify_zero: negative probe degree");
  TautClass X = expand_pixton_markers(c);
  X.normalize();
  RelationReport rep;
  rep.id = id;
  if (X.empty()) {
    rep.probes.push_back({"(empty)", Rat(0)});
    return rep;
  }
  const auto& first = X.terms().front();
  int g = first.strat.graph.total_genus();
  int n = first.strat.graph.num_legs();
  int codim = first.strat.codim();
  for (const auto& t : X.terms()) {
    if (t.strat.graph.total_genus() != g || t.strat.graph.num_legs() != n)
      throw std::invalid_argument("verify_zero: mixed ambient spaces");
    if (t.strat.codim() != codim)
      throw std::invalid_argument("verify_zero: mixed codimension");
  }
  rep.g = g;
  rep.n = n;
  rep.codim = codim;
  int dim = 3 * g - 3 + n;
  if (codim > dim) {
    // every pairing vanishes for dimension reasons
    rep.probes.push_back({"(vacuous: codim > dim)", Rat(0)});
    return rep;
  }
  if (codim + probe_degree != dim)
    throw std::invalid_argument("verify_zero: probe degree mismatch");
  if (probe_degree == 0) {
    Rat r = integrate(X);
    rep.probes.push_back({"1", r});
    rep.pass = r.is_zero();
    return rep;
  }
  std::vector<Divisor> gens = divisor_probes(g, n);
  std::vector<int> idx(probe_degree, 0);
  std::function<void(int, int)> go = [&](int pos, int start) {
    if (pos == probe_degree) {
      TautClass Y = X;
      std::string label;
      for (int i = 0; i < probe_degree; ++i) {
        Y = multiply_divisor(Y, gens[idx[i]]);
        Y.normalize();
        if (i) label += "*";
        label += gens[idx[i]].str();
      }
      Rat r = integrate(Y);
      rep.probes.push_back({label, r});
      if (!r.is_zero()) rep.pass = false;
      return;
    }
    for (int j = start; j < int(gens.size()); ++j) {
      idx[pos] = j;
      go(pos + 1, j);
    }
  };
  go(0, 0);
  return rep;
}

std::string RelationReport::str() const {
  std::ostringstream os;
  os << id << ": genus " << g << ", " << n << " markings, codim " << codim
     << " -- " << (pass ? "PASS" : "FAIL") << ", certified against "
     << probes.size() << " probe(s)\n";
  for (const auto& p : probes) {
    os << "  <class, " << p.probe << "> = " << p.residual.str();
    if (!p.residual.is_zero()) os << "   <-- nonzero";
    os << "\n";
  }
  return os.str();
}

TautClass perturb_term(const TautClass& X, std::size_t site) {
  TautClass Y = X;
  Y.normalize();
  if (Y.empty())
    throw std::invalid_argument("perturb_term: empty class");
  std::size_t k = site % Y.terms().size();
  TautClass out;
  std::size_t i = 0;
  for (const auto& t : Y.terms()) {
    Rat c = t.coeff;
    if (i == k) c += Rat(1);
    out.add_term(c, t.strat);
    ++i;
  }
  out.normalize();
  return out;
}

}  // namespace taut
