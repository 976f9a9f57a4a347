#include "taut/rational.hpp"
#include <ostream>
#include <stdexcept>

namespace taut {

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
  return os << r.str();
}

Rat rat_pow(const Rat& base, long e) {
  if (e < 0) throw std::invalid_argument("rat_pow: negative exponent");
  Rat acc(1), b = base;
  while (e) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class double_factorial(long n) {
  if (n == -1) return 1;
  if (n < 0 || n % 2 == 0)
    throw std::invalid_argument("double_factorial: need odd n >= -1");
  mpz_class r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Rat inv_factorial(unsigned long n) {
  return Rat(1) / Rat(factorial(n));
}

} // namespace taut
