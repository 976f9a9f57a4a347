#pragma once
#include "taut/strata.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace taut {

// Closed-form contribution of one cycle-shaped graph to the weightless
// degree-g class supported on it (g = total genus of the graph):
//   (B_{2g} / |Aut|) * sum over edge exponents k_e >= 1, sum k = g, of
//   the pushforward of prod_e (-1/k_e!)(psi_h + psi_h')^{k_e - 1}.
TautClass circular_contribution(const StableGraph& G);

// Shared shape of the boundary expansions below: over every cycle-shaped
// graph of the given genus, (1/|Aut|) times the same edge sum with
// sum k = genus, with a degree-g(v) vertex class marker at every vertex.
TautClass circular_marker_sum(int genus);

struct Relation {
  TautClass lhs, rhs;
  int g = 0, n = 0;  // ambient space
};

// lhs = the lambda_g lambda_{g-1} product as a vertex marker on the
// trivial graph of M-bar_g; rhs = its expansion over cycle-shaped
// boundary strata with vertex class markers left unexpanded.  g >= 2.
Relation build_lambda_product(int g);

// Recursion for the alternating psi pushforward along the
// non-separating gluing map, on M-bar_{g+1}: lhs is
// (2^{2g-1}/((-1)^{g+1}(g+1))) sum_{a+b=2g} (-1)^a of the decorated
// one-loop graph; rhs the cycle-shaped sum of genus g+1 with vertex
// markers expanded.  g >= 1.
Relation build_loop_pushforward(int g);

// The vanishing family sum_{a+b=2g+r} (-1)^a of the decorated one-loop
// graph on M-bar_{g+1}, r >= 1.  r = 0 redirects to the difference of
// build_loop_pushforward.
TautClass build_pushforward_family(int g, int r);

// Two-point relation on M-bar_{g+1,2}: -psi_1^{2g+3} - psi_2^{2g+3}
// plus alternating node-psi blocks over every ordered positive split
// g_1 + g_2 = g+1 with marking i on the genus-g_i side.  Claimed zero.
TautClass build_two_point_relation(int g);

struct ProbeResult {
  std::string probe;
  Rat residual;
};

struct RelationReport {
  std::string id;
  int g = 0, n = 0;  // ambient space
  int codim = 0;
  std::vector<ProbeResult> probes;
  bool pass = true;

  std::string str() const;  // human-readable table
};

// Degree-1 probe generators on M-bar_{g,n}: kappa_1, the non-separating
// divisor, one representative per separating divisor, psi per marking.
std::vector<Divisor> divisor_probes(int g, int n);

// Pair the class against every monomial of the given degree in the
// divisor generators and record the residual integrals.  Vertex class
// markers are expanded first.  Degree 0 means direct integration.  The
// class passes iff every residual is exactly zero.  This certifies
// against the probe list; it is not a proof of vanishing.
RelationReport verify_zero(const TautClass& c, int probe_degree,
                           const std::string& id = "relation");

// Negative-control helper: adds 1 to the coefficient of term `site`.
TautClass perturb_term(const TautClass& X, std::size_t site);

} // namespace taut
