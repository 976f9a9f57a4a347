#pragma once
#include "taut/rational.hpp"
#include <cstddef>
#include <string>
#include <vector>

namespace taut {

// <tau_{k_1} ... tau_{k_n}>_g computed by the KdV recursion together
// with the string and dilaton equations.  Returns 0 whenever the
// dimension constraint sum k_i = 3g - 3 + n fails or the moduli space
// is empty.
Rat psi_integral(int g, std::vector<int> ks);

// Same with kappa classes mixed in; kappa_a is the forgetful
// pushforward of psi^{a+1} (so kappa_0 acts as the scalar 2g - 2 + n).
Rat psi_kappa_integral(int g, std::vector<int> psis, std::vector<int> kappas);

// Full vertex integral: psi powers per marking, kappa indices, Chern
// classes lambda_j of the Hodge bundle and odd components ch_m of its
// Chern character.  Even ch components vanish identically and
// lambda_{j > g} is zero on rank-g bundles.
Rat hodge_integral(int g, std::vector<int> psis, std::vector<int> kappas,
                   std::vector<int> lambdas, std::vector<int> chs);

// lambda_j expanded as a polynomial in the odd ch classes: pairs of
// (sorted ch index multiset, coefficient).
std::vector<std::pair<std::vector<int>, Rat>> lambda_in_ch(int j);

// ---- memo table persistence ----
struct CacheLoadStats {
  std::size_t entries = 0;
  std::size_t reverified = 0;
};
// Load a cache file and spot-check about 1% of the entries (choice
// driven by `seed`) by recomputation; throws std::runtime_error on a
// bad header, a parse error, or a value that fails re-verification.
CacheLoadStats load_correlator_cache(const std::string& path, unsigned seed);
void save_correlator_cache(const std::string& path);
void clear_correlator_cache();
std::size_t correlator_cache_size();

} // namespace taut
