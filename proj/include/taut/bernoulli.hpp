#pragma once
#include "taut/rational.hpp"
#include <vector>

namespace taut {

// Bernoulli numbers with B_1 = -1/2 (so x/(e^x - 1) = sum B_n x^n / n!).
// Cached internally; repeated calls are O(1).
Rat bernoulli(unsigned n);

// sum_{a=1}^{r-1} a^m as a polynomial identity evaluated exactly at
// integer r >= 1 (value 0 for r = 1).  m >= 0.
Rat power_sum(unsigned m, const Rat& r);

// Coefficients of x/(e^x - 1) up to x^order inclusive, i.e. B_n / n!.
std::vector<Rat> bernoulli_gf(unsigned order);

} // namespace taut
