#pragma once
#include "taut/rational.hpp"

#include <functional>
#include <string>
#include <vector>

namespace taut {

// Formal vector fields on the big phase space of the point target
// (one-dimensional state space, unit pairing), expanded into a normal
// form.  One branch of the expansion keeps a rational coefficient, the
// multiset of genus-0 two-point coefficient functions <<tau_m phi>>_0
// picked up by corrections (recorded by their tau index m), and the
// surviving base vector tau_leaf.
struct TTerm {
  Rat c;
  std::vector<int> gs;  // correction-factor indices, sorted
  int leaf = 0;
};

struct TExpr {
  std::vector<TTerm> terms;
  static TExpr tau(int k);  // k < 0 is the zero vector field
};

// One application of W -> tau_plus(W) - <<W phi>>_0 phi.  Coefficient
// functions pass through untouched; only the base vector is rewritten,
// so every branch doubles: the shifted leaf and a new correction.
TExpr t_apply(const TExpr& w);

// The k-fold application to tau_m, fully expanded.
TExpr t_power(int k, int m);

// A derivative of the genus-g descendant potential of the point at
// t = 0: one vector field per slot plus pending tau_j insertions.
// Insertions distribute over every coefficient function and the core
// correlator by the product rule; unstable or dimension-violating
// correlators vanish.  Pairings twisted by a vertex class go through
// pixton_bracket instead.
struct BracketQuery {
  int g = 0;
  std::vector<TExpr> slots;
  std::vector<int> extras;
};

Rat eval_bracket(const BracketQuery& q);

// <<T^a(phi) T^b(phi); C>>_g at t = 0 with pending insertions, where C
// is the weightless degree-g two-point vertex class.  Every decorated
// stratum of C is contracted into a product of per-vertex brackets:
// legs carry T^a and T^b, and each node half with psi exponent e
// contributes the insertion T^e(phi) on its side.
Rat pixton_bracket(int a, int b, int g, const std::vector<int>& extras);

struct IdentityResult {
  Rat lhs, rhs;
  bool pass = false;
};

// Universal-equation catalog, all evaluated at t = 0 after applying
// the extra insertions:
//   "FP"        vanishing descendant family; needs l > g
//   "Thm1"      the l = g case, equated to the cycle-sum right side
//   "LiuXu"     vanishing of the disconnected part alone
//   "Cor"       alternating T-pair sum at genus g-1 vs the same right
//               side (doubled)
//   "TRR1"      genus-1 recursion <<T(W)>>_1 = (1/24)<<W phi phi>>_0
//               with W = tau_l (g ignored)
//   "G2Example" the genus-2 chain: the "Cor" left side, the recursion
//               value (1/24)<<phi T(phi) phi phi>>_0, and the twisted
//               right side must agree; pass means all three are equal
IdentityResult check_identity(const std::string& id, int g, int l,
                              const std::vector<int>& extras);

// sum_i (-1)^i P(tau_i(phi)) Q(tau_{m-i}(phi)) is unchanged when tau_i
// is replaced by T^i.  P and Q are one-slot brackets of genus gP, gQ;
// extras distribute over both factors.
bool tensor_swap_check(int m, int gP, int gQ,
                       const std::vector<int>& extras);

// A correlator supplier: (genus, sorted-or-not psi powers) -> value.
using CorrFn = std::function<Rat(int, const std::vector<int>&)>;

// Jet at t = 0, with pending insertions, of the odd-shift operator
//   -sum_n t~_n d/dt_{n+2l-1}
//   + (hbar/2) sum_{i=0}^{2l-2} (-1)^i d/dt_i d/dt_{2l-2-i}
// acting on exp(sum_h hbar^{h-1} F_h), read off at hbar^{g-1}.  The
// quadratic part splits into a connected piece at genus g-1 and a
// product piece over ordered genus splittings g1 + g2 = g.
Rat d_operator_jet(int g, int l, const std::vector<int>& extras);

// Derivative of d_operator_jet along a one-parameter deformation of
// the theory whose correlator derivative is `twist`: every F-slot of
// the operator is replaced by the twisted correlators once, with the
// spectator factor of the product piece kept plain (both assignments
// summed).
Rat d_operator_jet_twisted(const CorrFn& twist, int g, int l,
                           const std::vector<int>& extras);

}  // namespace taut
