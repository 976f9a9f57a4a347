#pragma once
#include "taut/biseries.hpp"
#include "taut/graphs.hpp"
#include "taut/rational.hpp"

#include <vector>

namespace taut {

// exp(sum_{i>=1} B_{2i}/((2i)(2i-1)) u^{2i-1} z^{2i-1}) truncated at
// u^tu z^tz.  Only odd powers of z occur, each tied to the matching
// power of u.
BiSeries r_matrix(unsigned tu, unsigned tz);

// The reciprocal series (exponential of the negated exponent).
BiSeries r_matrix_inverse(unsigned tu, unsigned tz);

// Coefficient table of V(w,z) = (1 - R(-w) R(-z)) / (w + z) expanded
// as sum_{k,l} V_{kl} w^k z^l, each V_{kl} a u-series.  The numerator
// vanishes on w = -z, so the division is exact; any remainder is a
// hard error.
class EdgeKernel {
 public:
  unsigned tu() const { return tu_; }
  // largest k with k + l <= deg() tabulated
  unsigned deg() const { return deg_; }
  // coefficient of w^k z^l u^p
  const Rat& at(unsigned k, unsigned l, unsigned p) const;

 private:
  friend EdgeKernel edge_kernel(unsigned tu, unsigned tz);
  unsigned tu_ = 0, deg_ = 0;
  std::vector<std::vector<std::vector<Rat>>> v_;
};

// Builds the table for k + l <= tz - 1 from the degree-tz numerator;
// throws std::runtime_error if the division leaves a remainder and
// std::invalid_argument if a truncation order is zero.
EdgeKernel edge_kernel(unsigned tu, unsigned tz);

// One connected graph's tensor contraction, as a u-series
// [u^0 .. u^U]: every vertex carries the jet of its genus potential at
// the shifted argument (the coordinates (1 - R^{-1}(z)) z, each of
// positive u-order), every edge carries the kernel bivector, and the
// two tensor slots of an edge feed its half-edge psi powers.  No
// automorphism division.  Vertices below stability are legal and
// contribute zero through the correlator guards.
std::vector<Rat> feynman_contribution(const StableGraph& G, int U);

// Sum of feynman_contribution / |Aut| over connected genus-g graphs
// with at most max_edges edges (defaults to U), truncated at u^U.
// Restricting the enumeration to stable graphs is exact: a genus-0
// vertex of valence v <= 2 with m jet insertions would need psi powers
// summing to v - 3 + m - (total jet order) < 0.
std::vector<Rat> feynman_sum(int g, int U, int max_edges = -1);

// ---- dual routes for the odd Chern-character action ----

// Direct route: <tau_{extras} ch_{2l-1}>_g through the intersection
// engine's removal recursion.
Rat ch_jet_direct(int l, int g, const std::vector<int>& extras);

// Operator route: B_{2l}/(2l)! times the odd-shift operator jet.
Rat ch_jet_operator(int l, int g, const std::vector<int>& extras);

// Sweeps ch_jet_direct against ch_jet_operator over every jet with
// genus <= 2 and at most `depth` insertions with entries up to the
// vertex dimension, then (when depth >= 2) checks mixed second-order
// jets in both application orders against the two-class direct route.
bool d_operator_check(int l, int depth);

}  // namespace taut
