#pragma once
#include "taut/rational.hpp"
#include <vector>

namespace taut {

// Truncated bivariate power series sum c[i][j] u^i z^j with exact
// rational coefficients.  Terms with i <= tu and j <= tz are tracked;
// everything beyond is discarded.  Combining series with different
// truncations narrows to the componentwise minimum and sets
// truncation_narrowed() on the result.
class BiSeries {
public:
  BiSeries(unsigned tu, unsigned tz)
      : tu_(tu), tz_(tz),
        c_(tu + 1, std::vector<Rat>(tz + 1)) {}

  static BiSeries constant(const Rat& r, unsigned tu, unsigned tz);
  // coeff * u^i z^j
  static BiSeries monomial(const Rat& coeff, unsigned i, unsigned j,
                           unsigned tu, unsigned tz);

  unsigned tu() const { return tu_; }
  unsigned tz() const { return tz_; }
  bool truncation_narrowed() const { return narrowed_; }

  const Rat& coeff(unsigned i, unsigned j) const { return c_[i][j]; }
  void set_coeff(unsigned i, unsigned j, const Rat& v) { c_[i][j] = v; }
  void add_coeff(unsigned i, unsigned j, const Rat& v) { c_[i][j] += v; }

  bool is_zero() const;

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b);
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b);
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b);
  BiSeries operator*(const Rat& s) const;
  friend bool operator==(const BiSeries& a, const BiSeries& b);

  BiSeries exp_of() const;   // requires zero constant term
  BiSeries log1p_of() const; // log(1 + this); requires zero constant term
  BiSeries inverse() const;  // requires nonzero constant term

  std::string str() const;

private:
  static BiSeries merge_shape(const BiSeries& a, const BiSeries& b);
  unsigned tu_, tz_;
  bool narrowed_ = false;
  std::vector<std::vector<Rat>> c_;
};

} // namespace taut
