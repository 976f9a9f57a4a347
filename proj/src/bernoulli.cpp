#include "taut/bernoulli.hpp"
#include <mutex>

namespace taut {

namespace {
std::vector<Rat> bcache;  // bcache[n] = B_n
std::mutex bmutex;

// Extend via the recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0 for n >= 1.
void ensure(unsigned n) {
  if (bcache.empty()) bcache.push_back(Rat(1));
  while (bcache.size() <= n) {
    unsigned m = static_cast<unsigned>(bcache.size());
    Rat s(0);
    for (unsigned k = 0; k < m; ++k)
      s += Rat(binomial(m + 1, k)) * bcache[k];
    bcache.push_back(-s / Rat(mpz_class(m + 1)));
  }
}
}  // namespace

Rat bernoulli(unsigned n) {
  std::lock_guard<std::mutex> lock(bmutex);
  ensure(n);
  return bcache[n];
}

std::vector<Rat> bernoulli_gf(unsigned order) {
  std::vector<Rat> out(order + 1);
  for (unsigned n = 0; n <= order; ++n)
    out[n] = bernoulli(n) * inv_factorial(n);
  return out;
}

Rat power_sum(unsigned m, const Rat& r) {
  if (m == 0) return r - Rat(1);
  // Faulhaber: sum_{a=1}^{r-1} a^m
  //   = (1/(m+1)) * sum_{k=0}^{m} C(m+1,k) B_k r^{m+1-k}.
  Rat s(0);
  for (unsigned k = 0; k <= m; ++k)
    s += Rat(binomial(m + 1, k)) * bernoulli(k) * rat_pow(r, m + 1 - k);
  return s / Rat(mpz_class(m + 1));
}

} // namespace taut
