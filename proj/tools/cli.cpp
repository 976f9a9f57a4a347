// tautring: exact calculator and verifier for tautological classes on
// moduli of stable curves.  Subcommands: lambda (print a class),
// integrate (evaluate a class written in strata text), verify (run a
// residual-certification suite).  All values are exact rationals; all
// machine-readable output is deterministic (no timestamps).
#include "CLI11.hpp"
#include "json.hpp"

#include "taut/goldens.hpp"
#include "taut/integrals.hpp"
#include "taut/pixton.hpp"
#include "taut/strata.hpp"
#include "taut/suites.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace taut;

namespace {

struct RunConfig {
  int genus = -1;        // -1: not set
  int markings = -1;     // -1: not set (lambda derives it)
  std::vector<int> profile;
  int degree = -1;       // -1: top degree
  int probe_degree = -1; // -1: derived from codimension
  int truncation_u = 4;
  int max_edges = -1;    // -1: unbounded
  std::string cache_path;  // resolved; empty when caching is off
  std::string format = "table";
  unsigned seed = 1;
  bool compare_reference = false;
  bool perturb = false;
};

json config_json(const RunConfig& c) {
  json j;
  j["genus"] = c.genus;
  j["markings"] = c.markings;
  j["profile"] = c.profile;
  j["degree"] = c.degree;
  j["probe_degree"] = c.probe_degree;
  j["truncation_u"] = c.truncation_u;
  j["max_edges"] = c.max_edges;
  j["cache"] = c.cache_path;
  j["format"] = c.format;
  j["seed"] = c.seed;
  j["compare_reference"] = c.compare_reference;
  j["perturb"] = c.perturb;
  return j;
}

std::string config_line(const RunConfig& c) {
  std::string p = "[";
  for (std::size_t i = 0; i < c.profile.size(); ++i)
    p += (i ? "," : "") + std::to_string(c.profile[i]);
  p += "]";
  return "config: genus=" + std::to_string(c.genus) +
         " markings=" + std::to_string(c.markings) + " profile=" + p +
         " degree=" + std::to_string(c.degree) +
         " probe_degree=" + std::to_string(c.probe_degree) +
         " truncation_u=" + std::to_string(c.truncation_u) +
         " max_edges=" + std::to_string(c.max_edges) +
         " cache=" + (c.cache_path.empty() ? "off" : c.cache_path) +
         " format=" + c.format + " seed=" + std::to_string(c.seed) +
         " compare_reference=" + (c.compare_reference ? "1" : "0") +
         " perturb=" + (c.perturb ? "1" : "0");
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string probe_note(std::size_t n) {
  return "certified against " + std::to_string(n) +
         (n == 1 ? " probe" : " probes");
}

int cmd_lambda(RunConfig& cfg) {
  const int g = cfg.genus;
  int n = cfg.markings >= 0 ? cfg.markings
                            : static_cast<int>(cfg.profile.size());
  if (!cfg.profile.empty() &&
      static_cast<int>(cfg.profile.size()) != n) {
    std::cerr << "profile length " << cfg.profile.size()
              << " does not match " << n << " markings\n";
    return 1;
  }
  cfg.markings = n;
  if (2 * g - 2 + n <= 0) {
    std::cerr << "unstable space: need 2g-2+n > 0 (g=" << g << ", n=" << n
              << ")\n";
    return 1;
  }
  if (cfg.compare_reference && (cfg.degree >= 0 || !cfg.profile.empty())) {
    std::cerr << "--compare-paper applies to the plain top Chern class "
                 "(no --degree, no --profile)\n";
    return 1;
  }

  std::vector<int> A =
      cfg.profile.empty() ? std::vector<int>(n, 0) : cfg.profile;
  TautClass X;
  std::string kind;
  if (cfg.degree >= 0) {
    X = p_class(g, cfg.degree, A);
    kind = "weightless degree-" + std::to_string(cfg.degree) + " class";
  } else if (!cfg.profile.empty()) {
    X = dr_cycle(g, A);
    kind = "double ramification cycle";
  } else {
    X = g == 0 ? TautClass::fundamental(0, n)
               : p_class(g, g, A) * rat_pow(Rat(-1, 2), g);
    kind = "lambda_" + std::to_string(g);
  }
  X.normalize();

  bool matched = true;
  if (cfg.compare_reference) {
    std::string ref = lambda_reference(g, n);
    if (ref.empty()) {
      std::cerr << "no embedded reference table for genus " << g << " with "
                << n << " markings\n";
      return 1;
    }
    matched = same_class(X, parse_taut(ref));
  }

  const std::string space =
      "M(" + std::to_string(g) + "," + std::to_string(n) + ")";
  if (cfg.format == "json") {
    json j;
    j["command"] = "lambda";
    j["config"] = config_json(cfg);
    j["space"] = space;
    j["kind"] = kind;
    json terms = json::array();
    for (const auto& t : X.terms())
      terms.push_back({{"coeff", t.coeff.str()},
                       {"stratum", stratum_str(t.strat)}});
    j["terms"] = terms;
    j["text"] = X.str();
    if (cfg.compare_reference) j["reference_match"] = matched;
    j["pass"] = matched;
    emit_json(j);
  } else {
    std::cout << "# tautring lambda | " << config_line(cfg) << "\n";
    std::cout << "# " << kind << " on " << space << ": " << X.terms().size()
              << (X.terms().size() == 1 ? " term" : " terms") << "\n";
    for (const auto& t : X.terms())
      std::cout << t.coeff.str() << " * " << stratum_str(t.strat) << "\n";
    if (cfg.compare_reference)
      std::cout << "reference match: " << (matched ? "yes" : "NO") << "\n";
  }
  return matched ? 0 : 2;
}

int cmd_integrate(const RunConfig& cfg, const std::string& text) {
  TautClass X;
  try {
    X = parse_taut(text);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  TautClass E = expand_pixton_markers(X);
  E.normalize();
  std::string warning;
  if (!E.empty()) {
    const auto& t0 = E.terms().front();
    int g = t0.strat.graph.total_genus();
    int nl = t0.strat.graph.num_legs();
    int dim = 3 * g - 3 + nl;
    try {
      bool any_top = false;
      for (const auto& t : E.terms())
        any_top = any_top || t.strat.codim() == dim;
      if (!any_top)
        warning = "degree mismatch: no term has codimension " +
                  std::to_string(dim) + ", the integral is 0 by dimension";
    } catch (const std::exception&) {
      // mixed-degree vertex markers: the integral itself resolves them
    }
  }
  Rat v = integrate(E);
  if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
  if (cfg.format == "json") {
    json j;
    j["command"] = "integrate";
    j["config"] = config_json(cfg);
    j["input"] = text;
    j["value"] = v.str();
    if (!warning.empty()) j["warning"] = warning;
    j["pass"] = true;
    emit_json(j);
  } else {
    std::cout << "# tautring integrate | " << config_line(cfg) << "\n";
    std::cout << v.str() << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite,
               const std::string& ident) {
  if (!ident.empty() && suite != "universal") {
    std::cerr << "--id restricts the universal catalog; use it with "
                 "'verify universal'\n";
    return 1;
  }
  std::vector<std::string> ids =
      suite == "all" ? suite_ids() : std::vector<std::string>{suite};
  SuiteOptions opt{cfg.genus,     cfg.probe_degree, cfg.truncation_u,
                   cfg.max_edges, cfg.perturb,      cfg.seed};
  std::vector<SuiteOutcome> outs;
  outs.reserve(ids.size());
  for (const auto& s : ids) outs.push_back(run_suite(s, opt, ident));
  bool all_pass = true;
  for (const auto& o : outs) all_pass = all_pass && o.pass;

  if (cfg.format == "json") {
    json j;
    j["command"] = "verify";
    j["config"] = config_json(cfg);
    json suites = json::array();
    for (const auto& o : outs) {
      json js;
      js["suite"] = o.suite;
      js["pass"] = o.pass;
      json checks = json::array();
      for (const auto& c : o.checks) {
        json jc;
        jc["id"] = c.id;
        if (!c.ambient.empty()) {
          jc["ambient"] = c.ambient;
          jc["note"] = probe_note(c.rows.size());
        }
        jc["pass"] = c.pass;
        json rows = json::array();
        for (const auto& r : c.rows)
          rows.push_back({{"name", r.name},
                          {"value", r.value},
                          {"expected", r.expected},
                          {"pass", r.pass}});
        jc["rows"] = rows;
        checks.push_back(jc);
      }
      js["checks"] = checks;
      suites.push_back(js);
    }
    j["suites"] = suites;
    j["pass"] = all_pass;
    emit_json(j);
  } else {
    std::cout << "# tautring verify | " << config_line(cfg) << "\n";
    for (const auto& o : outs) {
      std::cout << "== suite " << o.suite << ": "
                << (o.pass ? "PASS" : "FAIL") << "\n";
      for (const auto& c : o.checks) {
        std::cout << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.id;
        if (!c.ambient.empty()) std::cout << " on " << c.ambient;
        std::cout << "\n";
        for (const auto& r : c.rows)
          std::cout << "      " << r.name << ": " << r.value
                    << " (expected " << r.expected << ") "
                    << (r.pass ? "ok" : "FAIL") << "\n";
        if (!c.ambient.empty())
          std::cout << "      " << probe_note(c.rows.size()) << "\n";
      }
    }
    std::cout << "result: " << (all_pass ? "PASS" : "FAIL") << "\n";
  }
  return all_pass ? 0 : 1;
}

void save_cache(const RunConfig& cfg) {
  if (cfg.cache_path.empty()) return;
  try {
    save_correlator_cache(cfg.cache_path);
  } catch (const std::exception& e) {
    std::cerr << "cache: save failed: " << e.what() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tautring: exact tautological-ring calculator for moduli "
               "of stable curves"};
  app.require_subcommand(1);

  RunConfig cfg;
  bool json_flag = false;
  bool no_cache = false;
  std::string cache_flag, ident, suite, class_text;

  auto add_common = [&](CLI::App* c) {
    c->add_flag("--json", json_flag, "emit the machine-readable report");
    c->add_option("--cache", cache_flag, "memo cache file path");
    c->add_flag("--no-cache", no_cache, "disable the on-disk memo cache");
    c->add_option("--seed", cfg.seed,
                  "seed for cache spot checks and negative-control sites");
  };

  CLI::App* lam = app.add_subcommand(
      "lambda", "print a Hodge or ramification class in strata form");
  lam->add_option("--genus", cfg.genus, "genus")
      ->required()
      ->check(CLI::Range(0, 16));
  lam->add_option("--markings", cfg.markings, "number of markings")
      ->check(CLI::Range(0, 16));
  lam->add_option("--profile", cfg.profile,
                  "ramification profile a1,a2,... (sums to 0; use "
                  "--profile=-1,1 style for negatives)")
      ->delimiter(',');
  lam->add_option("--degree", cfg.degree,
                  "print the raw fixed-degree class instead")
      ->check(CLI::Range(0, 16));
  lam->add_flag("--compare-paper", cfg.compare_reference,
                "diff against the embedded reference tables");
  add_common(lam);

  CLI::App* ver = app.add_subcommand(
      "verify", "run a verification suite and report exact residuals");
  ver->add_option("suite", suite, "suite id or 'all'")
      ->required()
      ->check(CLI::IsMember([] {
        auto v = suite_ids();
        v.push_back("all");
        return v;
      }()));
  ver->add_option("--id", ident, "restrict the universal catalog to one "
                                 "identity family");
  ver->add_option("--genus", cfg.genus, "restrict to one genus")
      ->check(CLI::Range(0, 16));
  ver->add_option("--probe-degree", cfg.probe_degree,
                  "override the pairing degree")
      ->check(CLI::Range(0, 8));
  ver->add_option("--truncation-u", cfg.truncation_u,
                  "u-adic truncation order for the graph-sum suite")
      ->check(CLI::Range(2, 12));
  ver->add_option("--max-edges", cfg.max_edges,
                  "cap the edge count in graph sums (-1 = unbounded)")
      ->check(CLI::Range(-1, 64));
  ver->add_flag("--perturb", cfg.perturb,
                "negative control: bump coefficients by one and demand "
                "loud failure");
  add_common(ver);

  CLI::App* integ = app.add_subcommand(
      "integrate", "integrate a class written in the strata text format");
  integ->add_option("class", class_text,
                    "class text, e.g. \"M(1,1) psi{1:1}\"")
      ->required();
  add_common(integ);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  cfg.format = json_flag ? "json" : "table";

  if (!no_cache) {
    if (!cache_flag.empty()) {
      cfg.cache_path = cache_flag;
    } else {
      const char* dir = std::getenv("TAUTRING_CACHE_DIR");
      cfg.cache_path =
          (dir && *dir ? std::string(dir) : std::string(".")) +
          "/correlators.cache";
    }
    if (std::filesystem::exists(cfg.cache_path)) {
      try {
        CacheLoadStats st = load_correlator_cache(cfg.cache_path, cfg.seed);
        std::cerr << "cache: loaded " << st.entries << " entries ("
                  << st.reverified << " re-verified) from " << cfg.cache_path
                  << "\n";
      } catch (const std::runtime_error& e) {
        std::cerr << "cache: " << e.what() << "\n";
        return 1;
      }
    }
  }

  int rc = 0;
  try {
    if (lam->parsed())
      rc = cmd_lambda(cfg);
    else if (ver->parsed())
      rc = cmd_verify(cfg, suite, ident);
    else
      rc = cmd_integrate(cfg, class_text);
  } catch (const WindowMismatch& e) {
    std::cerr << "interpolation-window disagreement: " << e.what() << "\n";
    rc = 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    rc = 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 1;
  }
  save_cache(cfg);
  return rc;
}
