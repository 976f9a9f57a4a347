#include "taut/bigphase.hpp"

#include "taut/integrals.hpp"
#include "taut/pixton.hpp"
#include "taut/strata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace taut {

namespace {

// Point correlator at t = 0, guarded: unstable spaces and dimension
// violations contribute 0 without reaching the recursion.
Rat corr(int g, std::vector<int> taus) {
  int n = int(taus.size());
  if (g == 0 && n < 3) return Rat(0);
  if (g == 1 && n < 1) return Rat(0);
  long total = 0;
  for (int k : taus) {
    if (k < 0) return Rat(0);
    total += k;
  }
  if (total != 3L * g - 3 + n) return Rat(0);
  return psi_integral(g, std::move(taus));
}

using EvalFn = std::function<Rat(const std::vector<int>&)>;

// Distribute each pending insertion over the factor functions by the
// product rule and sum the resulting products.
Rat leibniz_over(const std::vector<EvalFn>& fs,
                 const std::vector<int>& extras) {
  std::vector<std::vector<int>> bins(fs.size());
  std::function<Rat(std::size_t)> go = [&](std::size_t i) -> Rat {
    if (i == extras.size()) {
      Rat p(1);
      for (std::size_t j = 0; j < fs.size(); ++j) {
        Rat v = fs[j](bins[j]);
        if (v.is_zero()) return Rat(0);
        p *= v;
      }
      return p;
    }
    Rat s(0);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      bins[j].push_back(extras[i]);
      s += go(i + 1);
      bins[j].pop_back();
    }
    return s;
  };
  return go(0);
}

EvalFn corr_factor(int g, std::vector<int> taus) {
  return [g, taus](const std::vector<int>& E) {
    std::vector<int> all = taus;
    all.insert(all.end(), E.begin(), E.end());
    return corr(g, std::move(all));
  };
}

// Same factory over an arbitrary correlator supplier.
EvalFn corr_factor_fn(CorrFn c, int g, std::vector<int> taus) {
  return [c = std::move(c), g, taus](const std::vector<int>& E) {
    std::vector<int> all = taus;
    all.insert(all.end(), E.begin(), E.end());
    return c(g, all);
  };
}

Rat plain_corr(int g, const std::vector<int>& ks) { return corr(g, ks); }

struct Bracket {
  int g = 0;
  std::vector<TExpr> slots;
};

// Product of derivative brackets: choose one expanded branch per slot,
// peel its coefficient functions off as genus-0 factors, keep the bare
// leaves in the core correlator of each bracket, then spread the
// pending insertions over everything.
Rat eval_bracket_product(const std::vector<Bracket>& brs,
                         const std::vector<int>& extras) {
  std::vector<std::pair<std::size_t, std::size_t>> slot_of;
  for (std::size_t b = 0; b < brs.size(); ++b)
    for (std::size_t s = 0; s < brs[b].slots.size(); ++s)
      slot_of.push_back({b, s});

  Rat total(0);
  std::vector<const TTerm*> pick(slot_of.size(), nullptr);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == slot_of.size()) {
      Rat c(1);
      std::vector<EvalFn> fs;
      for (const TTerm* t : pick) {
        c *= t->c;
        for (int m : t->gs) fs.push_back(corr_factor(0, {m, 0}));
      }
      std::vector<std::vector<int>> leaves(brs.size());
      for (std::size_t j = 0; j < slot_of.size(); ++j)
        leaves[slot_of[j].first].push_back(pick[j]->leaf);
      for (std::size_t b = 0; b < brs.size(); ++b)
        fs.push_back(corr_factor(brs[b].g, leaves[b]));
      total += c * leibniz_over(fs, extras);
      return;
    }
    const TExpr& e = brs[slot_of[i].first].slots[slot_of[i].second];
    for (const TTerm& t : e.terms) {
      pick[i] = &t;
      go(i + 1);
    }
  };
  go(0);
  return total;
}

// Compositions of `total` into m parts, every part >= 1.
std::vector<std::vector<int>> compositions(int total, int m) {
  std::vector<std::vector<int>> out;
  if (m < 1 || total < m) return out;
  std::vector<int> cur(m, 1);
  std::function<void(int, int)> go = [&](int i, int rem) {
    if (i == m - 1) {
      cur[i] = rem;
      out.push_back(cur);
      return;
    }
    for (int k = 1; k <= rem - (m - 1 - i); ++k) {
      cur[i] = k;
      go(i + 1, rem - k);
    }
  };
  go(0, total);
  return out;
}

// The coordinate term -sum_n tilde(t)_n <<tau_{n+s}>>_g: at t = 0 the
// dilaton shift survives at n = 1, and each pending insertion tau_j
// may hit the coordinate instead of the bracket.
Rat shifted_one_point(const CorrFn& c, int g, int s,
                      const std::vector<int>& extras) {
  Rat v = corr_factor_fn(c, g, {1 + s})(extras);
  for (std::size_t i = 0; i < extras.size(); ++i) {
    std::vector<int> rest;
    for (std::size_t j = 0; j < extras.size(); ++j)
      if (j != i) rest.push_back(extras[j]);
    v -= corr_factor_fn(c, g, {extras[i] + s})(rest);
  }
  return v;
}

// sum_{i=0}^{2l-2} (-1)^i <<tau_i tau_{2l-2-i}>>_{g-1}
Rat alt_connected(const CorrFn& c, int g, int l,
                  const std::vector<int>& extras) {
  Rat s(0);
  if (g < 1) return s;
  for (int i = 0; i <= 2 * l - 2; ++i) {
    Rat v = corr_factor_fn(c, g - 1, {i, 2 * l - 2 - i})(extras);
    s += (i % 2) ? -v : v;
  }
  return s;
}

// sum_{i=0}^{2l-2} (-1)^i sum_{h=0}^{g} A_h(tau_i) B_{g-h}(tau_{2l-2-i})
// with A, B possibly distinct correlator suppliers.
Rat alt_split_pair(const CorrFn& a, const CorrFn& b, int g, int l,
                   const std::vector<int>& extras) {
  Rat s(0);
  for (int i = 0; i <= 2 * l - 2; ++i) {
    for (int h = 0; h <= g; ++h) {
      Rat v = leibniz_over({corr_factor_fn(a, h, {i}),
                            corr_factor_fn(b, g - h, {2 * l - 2 - i})},
                           extras);
      s += (i % 2) ? -v : v;
    }
  }
  return s;
}

// Right side shared by the l = g identities: over cycle lengths m, edge
// exponents and positive genus splittings, a product of m twisted
// two-point brackets, insertions spread by the product rule.
Rat cycle_sum_rhs(int g, const std::vector<int>& extras) {
  Rat total(0);
  for (int m = 1; m <= g - 1; ++m) {
    for (const auto& ks : compositions(g, m)) {
      for (const auto& gs : compositions(g - 1, m)) {
        Rat base = Rat(1, m);
        std::vector<EvalFn> fs;
        for (int i = 0; i < m; ++i) {
          base *= -inv_factorial(ks[i]);
          int k = ks[i], gv = gs[i];
          fs.push_back([k, gv](const std::vector<int>& E) {
            Rat s(0);
            for (int l = 0; l <= k - 1; ++l)
              s += Rat(binomial(k - 1, l)) *
                   pixton_bracket(l, k - 1 - l, gv, E);
            return s;
          });
        }
        total += base * leibniz_over(fs, extras);
      }
    }
  }
  return total;
}

std::string memo_key(int a, int b, int g, const std::vector<int>& extras) {
  std::ostringstream os;
  os << a << "," << b << "," << g << ";";
  for (int e : extras) os << e << ",";
  return os.str();
}

}  // namespace

TExpr TExpr::tau(int k) {
  TExpr e;
  if (k >= 0) e.terms.push_back({Rat(1), {}, k});
  return e;
}

TExpr t_apply(const TExpr& w) {
  TExpr out;
  for (const TTerm& t : w.terms) {
    out.terms.push_back({t.c, t.gs, t.leaf + 1});
    TTerm corr_term{-t.c, t.gs, 0};
    corr_term.gs.insert(
        std::upper_bound(corr_term.gs.begin(), corr_term.gs.end(), t.leaf),
        t.leaf);
    out.terms.push_back(std::move(corr_term));
  }
  return out;
}

TExpr t_power(int k, int m) {
  TExpr e = TExpr::tau(m);
  for (int i = 0; i < k; ++i) e = t_apply(e);
  return e;
}

Rat eval_bracket(const BracketQuery& q) {
  return eval_bracket_product({Bracket{q.g, q.slots}}, q.extras);
}

Rat pixton_bracket(int a, int b, int g, const std::vector<int>& extras) {
  if (g < 1)
    throw std::invalid_argument("pixton_bracket: needs genus >= 1");
  if (a < 0 || b < 0)
    throw std::invalid_argument("pixton_bracket: negative T power");
  static std::map<std::string, Rat> memo;
  std::string key = memo_key(a, b, g, extras);
  auto hit = memo.find(key);
  if (hit != memo.end()) return hit->second;

  static std::map<int, TautClass> classes;
  auto cit = classes.find(g);
  if (cit == classes.end())
    cit = classes.emplace(g, p_class(g, g, {0, 0})).first;

  Rat total(0);
  for (const auto& term : cit->second.terms()) {
    const DecoratedStratum& s = term.strat;
    const StableGraph& G = s.graph;
    if (!s.leg_psi.empty())
      throw std::logic_error("pixton_bracket: unexpected leg decoration");
    for (const auto& kv : s.kappas)
      if (!kv.empty())
        throw std::logic_error("pixton_bracket: unexpected kappa decoration");
    for (const auto& mk : s.markers)
      if (!mk.empty())
        throw std::logic_error("pixton_bracket: unexpected vertex marker");

    std::vector<Bracket> brs(G.num_vertices());
    for (int v = 0; v < G.num_vertices(); ++v) brs[v].g = G.genus[v];
    for (const auto& [m, v] : G.legs)
      brs[v].slots.push_back(t_power(m == 1 ? a : b, 0));
    for (int e = 0; e < G.num_edges(); ++e) {
      brs[G.he_vertex(2 * e)].slots.push_back(t_power(s.he_psi[2 * e], 0));
      brs[G.he_vertex(2 * e + 1)].slots.push_back(
          t_power(s.he_psi[2 * e + 1], 0));
    }
    total += term.coeff * eval_bracket_product(brs, extras);
  }
  memo.emplace(std::move(key), total);
  return total;
}

IdentityResult check_identity(const std::string& id, int g, int l,
                              const std::vector<int>& extras) {
  IdentityResult R;
  if (id == "FP" || id == "Thm1" || id == "LiuXu") {
    int ll = (id == "FP") ? l : g;
    if (id == "FP" && ll <= g)
      throw std::invalid_argument(
          "check_identity: the vanishing family needs l > g");
    if (g < 1)
      throw std::invalid_argument("check_identity: needs genus >= 1");
    if (id == "Thm1" && g < 2)
      throw std::invalid_argument("check_identity: needs genus >= 2");
    if (id == "LiuXu") {
      R.lhs = shifted_one_point(plain_corr, g, 2 * ll - 1, extras);
      R.lhs += alt_split_pair(plain_corr, plain_corr, g, ll, extras) *
               Rat(1, 2);
    } else {
      R.lhs = d_operator_jet(g, ll, extras);
    }
    if (id == "Thm1") {
      Rat pref = Rat(g) / rat_pow(Rat(2), 2 * g - 1);
      if (g % 2) pref = -pref;
      R.rhs = pref * cycle_sum_rhs(g, extras);
    }
  } else if (id == "Cor" || id == "G2Example") {
    if (id == "G2Example") g = 2;
    if (g < 2)
      throw std::invalid_argument("check_identity: needs genus >= 2");
    Rat lhs(0);
    for (int i = 0; i <= 2 * g - 2; ++i) {
      Rat v = eval_bracket(
          {g - 1, {t_power(i, 0), t_power(2 * g - 2 - i, 0)}, extras});
      lhs += (i % 2) ? -v : v;
    }
    Rat pref = Rat(g) / rat_pow(Rat(2), 2 * g - 2);
    if (g % 2) pref = -pref;
    R.lhs = lhs;
    R.rhs = pref * cycle_sum_rhs(g, extras);
    if (id == "G2Example") {
      // the genus-1 recursion reduces both sides to the same genus-0
      // four-point value
      Rat mid = eval_bracket({0,
                              {TExpr::tau(0), t_power(1, 0), TExpr::tau(0),
                               TExpr::tau(0)},
                              extras}) *
                Rat(1, 24);
      R.pass = (R.lhs == mid) && (mid == R.rhs);
      return R;
    }
  } else if (id == "TRR1") {
    R.lhs = eval_bracket({1, {t_power(1, l)}, extras});
    std::vector<int> taus = {l, 0, 0};
    R.rhs = corr_factor(0, taus)(extras) * Rat(1, 24);
  } else {
    throw std::invalid_argument("check_identity: unknown id '" + id + "'");
  }
  R.pass = (R.lhs == R.rhs);
  return R;
}

Rat d_operator_jet(int g, int l, const std::vector<int>& extras) {
  if (g < 1) throw std::invalid_argument("d_operator_jet: needs genus >= 1");
  if (l < 1) throw std::invalid_argument("d_operator_jet: needs l >= 1");
  Rat v = shifted_one_point(plain_corr, g, 2 * l - 1, extras);
  v += alt_split_pair(plain_corr, plain_corr, g, l, extras) * Rat(1, 2);
  v += alt_connected(plain_corr, g, l, extras) * Rat(1, 2);
  return v;
}

Rat d_operator_jet_twisted(const CorrFn& twist, int g, int l,
                           const std::vector<int>& extras) {
  if (g < 1)
    throw std::invalid_argument("d_operator_jet_twisted: needs genus >= 1");
  if (l < 1)
    throw std::invalid_argument("d_operator_jet_twisted: needs l >= 1");
  Rat v = shifted_one_point(twist, g, 2 * l - 1, extras);
  // the product rule hits each factor of the quadratic piece once
  v += alt_split_pair(twist, plain_corr, g, l, extras) * Rat(1, 2);
  v += alt_split_pair(plain_corr, twist, g, l, extras) * Rat(1, 2);
  v += alt_connected(twist, g, l, extras) * Rat(1, 2);
  return v;
}

bool tensor_swap_check(int m, int gP, int gQ,
                       const std::vector<int>& extras) {
  if (m < 0) throw std::invalid_argument("tensor_swap_check: m >= 0");
  auto one_slot = [](int g, const TExpr& w) {
    return [g, w](const std::vector<int>& E) {
      return eval_bracket({g, {w}, E});
    };
  };
  Rat lhs(0), rhs(0);
  for (int i = 0; i <= m; ++i) {
    Rat a = leibniz_over(
        {one_slot(gP, TExpr::tau(i)), one_slot(gQ, TExpr::tau(m - i))},
        extras);
    Rat b = leibniz_over(
        {one_slot(gP, t_power(i, 0)), one_slot(gQ, t_power(m - i, 0))},
        extras);
    lhs += (i % 2) ? -a : a;
    rhs += (i % 2) ? -b : b;
  }
  return lhs == rhs;
}

}  // namespace taut
