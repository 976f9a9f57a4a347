#pragma once
#include "taut/strata.hpp"

#include <stdexcept>
#include <vector>

namespace taut {

// Raised when the two interpolation windows disagree; callers treat it
// as a hard failure (the command line maps it to its own exit code).
struct WindowMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Number of admissible modular weightings of the graph: half-edge
// values in {0..r-1} opposite across each edge, balancing the fixed leg
// values A at every vertex.  Equals r^{first Betti} when the legs
// balance globally, else 0.
long weighting_count(const StableGraph& G, const std::vector<int>& A, long r);

// Degree-d part of the weighted stratum sum over genus-g graphs with
// marking values A, evaluated at one modulus r (exact arithmetic).
TautClass p_class_at_r(int g, int d, const std::vector<int>& A, long r);

// The stable value: per-stratum coefficients are interpolated from one
// window of moduli, checked against a disjoint second window, and read
// off at r = 0.  Throws WindowMismatch if the windows disagree.
TautClass p_class(int g, int d, const std::vector<int>& A);

// Same interpolation restricted to the strata supported on one graph.
TautClass p_contribution(const StableGraph& G, int d,
                         const std::vector<int>& A);

// Weighted double-ramification class: 2^{-g} times the degree-g sum.
// Requires the marking values to sum to zero.
TautClass dr_cycle(int g, const std::vector<int>& A);

// Top Chern class of the Hodge bundle on the unmarked genus-g space,
// expressed through the weightless degree-g sum (g >= 2).
TautClass lambda_class(int g);

// Replace every vertex marker flagged as the weightless degree-g_v
// vertex class by its expansion, composing graphs via substitution.
TautClass expand_pixton_markers(const TautClass& X);

} // namespace taut
