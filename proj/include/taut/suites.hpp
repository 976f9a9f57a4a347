#pragma once
#include <string>
#include <vector>

namespace taut {

// Options shared by every verification suite.  A value of -1 means
// "use the suite's default sweep / derive from dimensions".
struct SuiteOptions {
  int genus = -1;         // restrict to one genus (suite default sweep if -1)
  int probe_degree = -1;  // override the probe degree (derived if -1)
  int truncation_u = 4;   // u-series order for the graph-sum checks
  int max_edges = -1;     // edge bound for the graph-sum checks
  bool perturb = false;   // run deliberately broken variants instead
  unsigned seed = 1;      // site selection for the broken variants
};

struct CheckRow {
  std::string name;      // probe / side / slot label
  std::string value;     // exact rational or canonical text
  std::string expected;  // what a pass requires
  bool pass = false;
};

struct SuiteCheck {
  std::string id;
  std::string ambient;  // "M(g,n)" when meaningful, else empty
  bool pass = false;
  std::vector<CheckRow> rows;
};

struct SuiteOutcome {
  std::string suite;
  bool pass = false;
  std::vector<SuiteCheck> checks;
};

// The suite catalog, in canonical execution order.
const std::vector<std::string>& suite_ids();
bool is_suite_id(const std::string& id);

// Run one suite (or "all").  `ident` filters the universal catalog to a
// single identity name; other suites ignore it.  With opt.perturb the
// suite runs seed-chosen +1-perturbed variants of its own checks; a
// sensitive verifier must then report failures, so the outcome's pass
// flag is false by design.  May throw WindowMismatch; callers map it
// to their own exit path.
SuiteOutcome run_suite(const std::string& id, const SuiteOptions& opt,
                       const std::string& ident = "");

} // namespace taut
