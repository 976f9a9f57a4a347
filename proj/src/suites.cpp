#include "taut/suites.hpp"

#include "taut/bigphase.hpp"
#include "taut/givental.hpp"
#include "taut/goldens.hpp"
#include "taut/integrals.hpp"
#include "taut/pixton.hpp"
#include "taut/relations.hpp"
#include "taut/strata.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace taut {
namespace {

SuiteCheck from_report(const RelationReport& rep) {
  SuiteCheck c;
  c.id = rep.id;
  const bool empty_class =
      rep.probes.size() == 1 && rep.probes.front().probe == "(empty)";
  c.ambient = empty_class ? std::string()
                          : "M(" + std::to_string(rep.g) + "," +
                                std::to_string(rep.n) + ")";
  c.pass = rep.pass;
  for (const auto& p : rep.probes)
    c.rows.push_back({p.probe, p.residual.str(), "0", p.residual.is_zero()});
  return c;
}

void finish(SuiteOutcome& out) {
  out.pass = true;
  for (const auto& c : out.checks) out.pass = out.pass && c.pass;
}

void add_eq_row(SuiteCheck& c, const std::string& name, const Rat& got,
                const Rat& want) {
  bool ok = (got == want);
  c.rows.push_back({name, got.str(), want.str(), ok});
  c.pass = c.pass && ok;
}

struct ClassItem {
  std::string id;
  TautClass cls;
  int probe_degree = 0;
};

void certify_items(SuiteOutcome& out, const std::vector<ClassItem>& items) {
  for (const auto& it : items)
    out.checks.push_back(
        from_report(verify_zero(it.cls, it.probe_degree, it.id)));
}

// Append at least `want` deliberately broken runs across the items,
// walking stratum sites from the seed until the verifier reports loud
// failures.  The perturbation hits the expansion as built, before any
// cancellation, so identically-vanishing members still expose sites;
// members whose every pairing is vacuous cannot demonstrate
// sensitivity and are skipped.
void certify_perturbed(SuiteOutcome& out, const std::vector<ClassItem>& items,
                       const SuiteOptions& opt, int want = 2) {
  int produced = 0;
  for (std::size_t k = 0; k < items.size() && produced < want; ++k) {
    const ClassItem& it = items[(opt.seed + k) % items.size()];
    TautClass X = expand_pixton_markers(it.cls);
    if (X.empty()) continue;
    const auto& t0 = X.terms().front();
    int g = t0.strat.graph.total_genus();
    int n = t0.strat.graph.num_legs();
    if (t0.strat.codim() > 3 * g - 3 + n) continue;
    const std::size_t terms = X.terms().size();
    for (std::size_t j = 0; j < terms && produced < want; ++j) {
      std::size_t site = (opt.seed + j) % terms;
      RelationReport rep =
          verify_zero(perturb_term(X, site), it.probe_degree,
                      it.id + " [+1 at term " + std::to_string(site) + "]");
      if (!rep.pass) {
        out.checks.push_back(from_report(rep));
        ++produced;
      }
    }
  }
  if (produced < want)
    out.checks.push_back({"negative control",
                          "",
                          false,
                          {{"loud perturbation sites", std::to_string(produced),
                            std::to_string(want) + " or more", false}}});
}

SuiteOutcome suite_thm2(const SuiteOptions& opt) {
  SuiteOutcome out{"thm2", true, {}};
  std::vector<int> gs = opt.genus >= 0 ? std::vector<int>{opt.genus}
                                       : std::vector<int>{1, 2};
  std::vector<ClassItem> items;
  for (int g : gs) {
    Relation R = build_loop_pushforward(g);
    int pd = opt.probe_degree >= 0 ? opt.probe_degree : g - 1;
    items.push_back({"loop-pushforward g=" + std::to_string(g),
                     R.lhs + R.rhs * Rat(-1), pd});
  }
  if (opt.perturb)
    certify_perturbed(out, items, opt);
  else
    certify_items(out, items);
  finish(out);
  return out;
}

SuiteOutcome suite_lambda_product(const SuiteOptions& opt) {
  SuiteOutcome out{"lambda-product", true, {}};
  std::vector<int> gs = opt.genus >= 0 ? std::vector<int>{opt.genus}
                                       : std::vector<int>{2, 3, 4};
  std::vector<ClassItem> items;
  for (int g : gs) {
    Relation R = build_lambda_product(g);
    int pd = opt.probe_degree >= 0 ? opt.probe_degree : g - 2;
    std::string id = "lambda-product g=" + std::to_string(g);
    items.push_back({id, R.lhs + R.rhs * Rat(-1), pd});
    if (!opt.perturb) {
      SuiteCheck c = from_report(verify_zero(items.back().cls, pd, id));
      std::string ref = lambda_product_reference(g);
      if (!ref.empty()) {
        bool m = same_class(R.rhs, parse_taut(ref));
        c.rows.insert(c.rows.begin(),
                      {"boundary expansion matches embedded table",
                       m ? "yes" : "no", "yes", m});
        c.pass = c.pass && m;
      }
      out.checks.push_back(c);
    }
  }
  if (opt.perturb) certify_perturbed(out, items, opt);
  finish(out);
  return out;
}

SuiteOutcome suite_lp_family(const SuiteOptions& opt) {
  SuiteOutcome out{"lp-family", true, {}};
  std::vector<std::pair<int, int>> prs;
  if (opt.genus >= 0)
    prs = {{opt.genus, 1}, {opt.genus, 2}};
  else
    prs = {{1, 1}, {1, 2}, {2, 1}};
  if (!opt.perturb) {
    std::vector<ClassItem> items;
    for (auto [g, r] : prs) {
      int pd = opt.probe_degree >= 0 ? opt.probe_degree
                                     : std::max(0, g - r - 1);
      items.push_back({"pushforward family g=" + std::to_string(g) +
                           " r=" + std::to_string(r),
                       build_pushforward_family(g, r), pd});
    }
    certify_items(out, items);
  } else {
    // the family members cancel or are vacuous as built, so there is no
    // stored coefficient to bump; perturbing the coefficient of S_a in
    // sum_a (-1)^a S_a changes the class by exactly +S_a, which we
    // inject directly
    int produced = 0;
    for (std::size_t k = 0; k < prs.size() && produced < 2; ++k) {
      auto [g, r] = prs[(opt.seed + k) % prs.size()];
      const int total = 2 * g + r;
      if (1 + total > 3 * g) continue;  // every split is dimension-vacuous
      const int pd = opt.probe_degree >= 0 ? opt.probe_degree : g - r - 1;
      for (int j = 0; j <= total && produced < 2; ++j) {
        int a = (static_cast<int>(opt.seed) + j) % (total + 1);
        DecoratedStratum s =
            DecoratedStratum::plain(StableGraph{{g}, {}, {{0, 0}}});
        s.he_psi = {a, total - a};
        TautClass X;
        X.add_term(Rat(1), s);
        RelationReport rep = verify_zero(
            X, pd,
            "pushforward family g=" + std::to_string(g) + " r=" +
                std::to_string(r) + " [+1 at psi split (" +
                std::to_string(a) + "," + std::to_string(total - a) + ")]");
        if (!rep.pass) {
          out.checks.push_back(from_report(rep));
          ++produced;
        }
      }
    }
    if (produced < 2)
      out.checks.push_back(
          {"negative control",
           "",
           false,
           {{"loud perturbation sites", std::to_string(produced), "2 or more",
             false}}});
  }
  finish(out);
  return out;
}

SuiteOutcome suite_lp_prop2(const SuiteOptions& opt) {
  SuiteOutcome out{"lp-prop2", true, {}};
  std::vector<int> gs =
      opt.genus >= 0 ? std::vector<int>{opt.genus} : std::vector<int>{1};
  std::vector<ClassItem> items;
  for (int g : gs) {
    int pd = opt.probe_degree >= 0 ? opt.probe_degree : g - 1;
    items.push_back({"two-point relation g=" + std::to_string(g),
                     build_two_point_relation(g), pd});
  }
  if (opt.perturb)
    certify_perturbed(out, items, opt);
  else
    certify_items(out, items);
  finish(out);
  return out;
}

struct UItem {
  std::string name;
  int g = 0, l = 0;
  std::vector<int> extras;
};

std::vector<UItem> universal_catalog() {
  std::vector<UItem> v;
  const std::vector<std::vector<int>> e4 = {{}, {0}, {1}, {0, 1}};
  const std::vector<std::vector<int>> e2 = {{}, {0}};
  for (int g : {1, 2})
    for (const auto& E : e4) v.push_back({"FP", g, g + 1, E});
  for (int g : {1, 2})
    for (const auto& E : e4) v.push_back({"LiuXu", g, 0, E});
  for (int g : {2, 3})
    for (const auto& E : e2) v.push_back({"Thm1", g, 0, E});
  for (const auto& E : e2) v.push_back({"Cor", 2, 0, E});
  v.push_back({"TRR1", 1, 0, {}});
  v.push_back({"TRR1", 1, 1, {0}});
  v.push_back({"TRR1", 1, 2, {0, 1}});
  v.push_back({"G2Example", 2, 0, {}});
  return v;
}

std::string extras_label(const std::vector<int>& E) {
  if (E.empty()) return "none";
  std::string s;
  for (std::size_t i = 0; i < E.size(); ++i) {
    if (i) s += ",";
    s += "tau" + std::to_string(E[i]);
  }
  return s;
}

std::string uitem_label(const UItem& it) {
  std::string s = it.name + " g=" + std::to_string(it.g);
  if (it.name == "FP" || it.name == "TRR1")
    s += " l=" + std::to_string(it.l);
  s += " extras=" + extras_label(it.extras);
  return s;
}

SuiteOutcome suite_universal(const SuiteOptions& opt,
                             const std::string& ident) {
  SuiteOutcome out{"universal", true, {}};
  const std::vector<UItem> all = universal_catalog();
  std::vector<UItem> keep;
  for (const auto& it : all) {
    if (!ident.empty() && ident != it.name) continue;
    if (opt.genus >= 0 && it.g != opt.genus) continue;
    keep.push_back(it);
  }
  bool want_swap = (ident.empty() || ident == "tensor-swap") &&
                   (opt.genus < 0 || opt.genus == 1);
  if (keep.empty() && !want_swap)
    throw std::invalid_argument(
        "universal: no catalog entry matches the filters");
  if (!opt.perturb) {
    for (const auto& it : keep) {
      IdentityResult r = check_identity(it.name, it.g, it.l, it.extras);
      SuiteCheck c{uitem_label(it), "", r.pass, {}};
      c.rows.push_back({"lhs = rhs", r.lhs.str(), r.rhs.str(), r.pass});
      out.checks.push_back(c);
    }
    if (want_swap) {
      SuiteCheck c{"tensor-swap m<=4 (genus 1 x genus 1)", "", true, {}};
      for (int m = 0; m <= 4; ++m) {
        bool ok = tensor_swap_check(m, 1, 1, {});
        c.rows.push_back({"m=" + std::to_string(m),
                          ok ? "swap-invariant" : "changed", "swap-invariant",
                          ok});
        c.pass = c.pass && ok;
      }
      out.checks.push_back(c);
    }
  } else {
    const std::vector<UItem>& pool = keep.empty() ? all : keep;
    for (unsigned k = 0; k < 2; ++k) {
      const UItem& it = pool[(opt.seed + k) % pool.size()];
      IdentityResult r = check_identity(it.name, it.g, it.l, it.extras);
      bool on_lhs = ((opt.seed + k) % 2 == 0);
      Rat lhs = on_lhs ? r.lhs + Rat(1) : r.lhs;
      Rat rhs = on_lhs ? r.rhs : r.rhs + Rat(1);
      bool eq = (lhs == rhs);
      SuiteCheck c{uitem_label(it) +
                       (on_lhs ? " [+1 on lhs]" : " [+1 on rhs]"),
                   "", eq, {}};
      c.rows.push_back({"lhs = rhs", lhs.str(), rhs.str(), eq});
      out.checks.push_back(c);
    }
  }
  finish(out);
  return out;
}

SuiteOutcome suite_givental(const SuiteOptions& opt) {
  SuiteOutcome out{"givental", true, {}};
  const int U = opt.truncation_u;
  if (U < 2)
    throw std::invalid_argument("givental: needs a u-truncation of >= 2");
  const auto f = feynman_sum(2, U, opt.max_edges);
  const Rat strata_route = Rat(1, 4) * integrate(p_class(2, 2, {}));
  const Rat direct = ch_jet_direct(1, 1, {0});
  const Rat oper = ch_jet_operator(1, 1, {0});
  if (!opt.perturb) {
    SuiteCheck a{"graph-sum vanishing above the genus weight", "", true, {}};
    for (int i : {3, 4})
      if (i <= U) {
        bool ok = f[i].is_zero();
        a.rows.push_back(
            {"[u^" + std::to_string(i) + "] genus-2 sum", f[i].str(), "0", ok});
        a.pass = a.pass && ok;
      }
    out.checks.push_back(a);

    SuiteCheck b{"surviving slot equals the boundary-class route", "", true,
                 {}};
    add_eq_row(b, "[u^2] genus-2 sum", f[2], strata_route);
    out.checks.push_back(b);

    SuiteCheck c{"insertion operator at first order", "", true, {}};
    add_eq_row(c, "direct route <tau_0 ch_1>_1", direct, Rat(1, 24));
    add_eq_row(c, "operator route", oper, Rat(1, 24));
    bool okd = d_operator_check(1, 2);
    c.rows.push_back(
        {"first and mixed second order sweep", okd ? "pass" : "fail", "pass",
         okd});
    c.pass = c.pass && okd;
    out.checks.push_back(c);
  } else {
    const std::size_t slot = std::min<std::size_t>(3, f.size() - 1);
    SuiteCheck a{"graph-sum slot [+1]", "", false, {}};
    Rat broken = f[slot] + Rat(1);
    a.rows.push_back({"[u^" + std::to_string(slot) + "] genus-2 sum",
                      broken.str(), "0", broken.is_zero()});
    a.pass = broken.is_zero();
    out.checks.push_back(a);

    SuiteCheck b{"operator route [+1]", "", false, {}};
    add_eq_row(b, "operator vs direct route", oper + Rat(1), direct);
    b.pass = (oper + Rat(1) == direct);
    out.checks.push_back(b);
  }
  finish(out);
  return out;
}

SuiteOutcome suite_oracle(const SuiteOptions& opt) {
  SuiteOutcome out{"oracle-consistency", true, {}};
  const bool do2 = opt.genus < 0 || opt.genus == 2;
  const bool do3 = opt.genus < 0 || opt.genus == 3;
  if (!opt.perturb) {
    if (do2) {
      SuiteCheck c{"top-degree Hodge monomials, genus 2", "M(2,0)", true, {}};
      Rat a21 = hodge_integral(2, {}, {}, {2, 1}, {});
      Rat b21 = integrate(multiply_lambda(lambda_class(2), 1));
      add_eq_row(c, "l2*l1 direct vs boundary route", a21, b21);
      add_eq_row(c, "l2*l1 known value", a21, Rat(1, 5760));
      // the dual-Chern relation l1^2 = 2*l2 reduces the remaining
      // top-degree monomial to the one above
      add_eq_row(c, "l1^3 vs 2*(l2*l1 boundary route)",
                 hodge_integral(2, {}, {}, {1, 1, 1}, {}), b21 * Rat(2));
      out.checks.push_back(c);
    }
    if (do3) {
      SuiteCheck c{"top-degree Hodge monomials, genus 3", "M(3,0)", true, {}};
      TautClass l3 = lambda_class(3);
      Rat b33 = integrate(multiply_lambda(l3, 3));
      Rat b321 = integrate(multiply_lambda(multiply_lambda(l3, 2), 1));
      Rat b3111 = integrate(
          multiply_lambda(multiply_lambda(multiply_lambda(l3, 1), 1), 1));
      add_eq_row(c, "l3^2 direct vs boundary route",
                 hodge_integral(3, {}, {}, {3, 3}, {}), b33);
      add_eq_row(c, "l3*l2*l1 direct vs boundary route",
                 hodge_integral(3, {}, {}, {3, 2, 1}, {}), b321);
      add_eq_row(c, "l3*l1^3 direct vs boundary route",
                 hodge_integral(3, {}, {}, {3, 1, 1, 1}, {}), b3111);
      // l1^2 = 2*l2 and l2^2 = 2*l1*l3 reduce every remaining
      // top-degree monomial to multiples of l3*l2*l1
      add_eq_row(c, "l2^3 vs 2*(l3*l2*l1)",
                 hodge_integral(3, {}, {}, {2, 2, 2}, {}), b321 * Rat(2));
      add_eq_row(c, "l2^2*l1^2 vs 4*(l3*l2*l1)",
                 hodge_integral(3, {}, {}, {2, 2, 1, 1}, {}), b321 * Rat(4));
      add_eq_row(c, "l2*l1^4 vs 8*(l3*l2*l1)",
                 hodge_integral(3, {}, {}, {2, 1, 1, 1, 1}, {}),
                 b321 * Rat(8));
      add_eq_row(c, "l1^6 vs 16*(l3*l2*l1)",
                 hodge_integral(3, {}, {}, {1, 1, 1, 1, 1, 1}, {}),
                 b321 * Rat(16));
      out.checks.push_back(c);
    }
    {
      // building a class interpolates every stratum coefficient from
      // one window of moduli and cross-checks a disjoint second window;
      // a disagreement throws out of the suite entirely
      SuiteCheck c{"interpolation windows agree", "", true, {}};
      TautClass one = p_class(1, 1, {0});
      c.rows.push_back({"genus 1, degree 1, one marking",
                        std::to_string(one.terms().size()) + " terms",
                        "built", true});
      for (int g = 2; g <= 3; ++g) {
        if (opt.genus >= 0 && g != opt.genus) continue;
        for (int d = 0; d <= g; ++d) {
          TautClass X = p_class(g, d, {});
          c.rows.push_back({"genus " + std::to_string(g) + ", degree " +
                                std::to_string(d),
                            std::to_string(X.terms().size()) + " terms",
                            "built", true});
        }
      }
      out.checks.push_back(c);
    }
    {
      SuiteCheck c{"cycle-graph closed form matches interpolation", "", true,
                   {}};
      for (int g = 2; g <= 5; ++g) {
        if (opt.genus >= 0 && g != opt.genus) continue;
        int count = 0;
        bool all = true;
        for (const StableGraph& G : circular_graphs(g)) {
          all = all && same_class(circular_contribution(G),
                                  p_contribution(G, g, {}));
          ++count;
        }
        c.rows.push_back({"genus " + std::to_string(g),
                          all ? "all " + std::to_string(count) +
                                    " graphs agree"
                              : "disagreement",
                          "agreement", all});
        c.pass = c.pass && all;
      }
      out.checks.push_back(c);
    }
  } else {
    Rat a21 = hodge_integral(2, {}, {}, {2, 1}, {}) + Rat(1);
    Rat b21 = integrate(multiply_lambda(lambda_class(2), 1));
    SuiteCheck c1{"Hodge monomial direct route [+1]", "M(2,0)", false, {}};
    add_eq_row(c1, "l2*l1 direct vs boundary route", a21, b21);
    c1.pass = (a21 == b21);
    out.checks.push_back(c1);

    auto cg = circular_graphs(2);
    const StableGraph& G = cg[opt.seed % cg.size()];
    TautClass cc = circular_contribution(G);
    cc.normalize();
    TautClass broken = perturb_term(cc, opt.seed % cc.terms().size());
    bool same = same_class(broken, p_contribution(G, 2, {}));
    SuiteCheck c2{"cycle closed form [+1 at term]", "", same, {}};
    c2.rows.push_back({"closed form vs interpolation",
                       same ? "agreement" : "disagreement", "agreement",
                       same});
    out.checks.push_back(c2);
  }
  finish(out);
  return out;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {
      "thm2",      "lambda-product", "lp-family",          "lp-prop2",
      "universal", "givental",       "oracle-consistency"};
  return ids;
}

bool is_suite_id(const std::string& id) {
  const auto& ids = suite_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

SuiteOutcome run_suite(const std::string& id, const SuiteOptions& opt,
                       const std::string& ident) {
  if (id == "thm2") return suite_thm2(opt);
  if (id == "lambda-product") return suite_lambda_product(opt);
  if (id == "lp-family") return suite_lp_family(opt);
  if (id == "lp-prop2") return suite_lp_prop2(opt);
  if (id == "universal") return suite_universal(opt, ident);
  if (id == "givental") return suite_givental(opt);
  if (id == "oracle-consistency") return suite_oracle(opt);
  throw std::invalid_argument("unknown suite: " + id);
}

} // namespace taut
