#pragma once
#include "taut/rational.hpp"
#include <vector>

namespace taut {

// Dense univariate polynomial over Rat.  coeffs_[i] is the x^i
// coefficient; the zero polynomial has empty storage and degree() == -1.
class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UniPoly constant(const Rat& r);
  static UniPoly monomial(const Rat& coeff, int deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rat coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
  }
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat eval(const Rat& x) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { a += b; return a; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { a -= b; return a; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  UniPoly operator*(const Rat& s) const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  std::string str() const;  // e.g. "1/6*x^2 - 1/2*x + 1"

private:
  void trim();
  std::vector<Rat> c_;
};

// Exact interpolation through distinct sample points (x_i, y_i).
// Throws std::invalid_argument on a repeated x value.
UniPoly interpolate(const std::vector<std::pair<Rat, Rat>>& points);

} // namespace taut
