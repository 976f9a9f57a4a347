#include "taut/biseries.hpp"
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace taut {

BiSeries BiSeries::constant(const Rat& r, unsigned tu, unsigned tz) {
  BiSeries s(tu, tz);
  s.c_[0][0] = r;
  return s;
}

BiSeries BiSeries::monomial(const Rat& coeff, unsigned i, unsigned j,
                            unsigned tu, unsigned tz) {
  BiSeries s(tu, tz);
  if (i <= tu && j <= tz) s.c_[i][j] = coeff;
  return s;
}

bool BiSeries::is_zero() const {
  for (const auto& row : c_)
    for (const auto& v : row)
      if (!v.is_zero()) return false;
  return true;
}

BiSeries BiSeries::merge_shape(const BiSeries& a, const BiSeries& b) {
  BiSeries out(std::min(a.tu_, b.tu_), std::min(a.tz_, b.tz_));
  out.narrowed_ = a.narrowed_ || b.narrowed_ ||
                  a.tu_ != b.tu_ || a.tz_ != b.tz_;
  return out;
}

BiSeries operator+(const BiSeries& a, const BiSeries& b) {
  BiSeries out = BiSeries::merge_shape(a, b);
  for (unsigned i = 0; i <= out.tu_; ++i)
    for (unsigned j = 0; j <= out.tz_; ++j)
      out.c_[i][j] = a.c_[i][j] + b.c_[i][j];
  return out;
}

BiSeries operator-(const BiSeries& a, const BiSeries& b) {
  BiSeries out = BiSeries::merge_shape(a, b);
  for (unsigned i = 0; i <= out.tu_; ++i)
    for (unsigned j = 0; j <= out.tz_; ++j)
      out.c_[i][j] = a.c_[i][j] - b.c_[i][j];
  return out;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  BiSeries out = BiSeries::merge_shape(a, b);
  for (unsigned i = 0; i <= out.tu_; ++i)
    for (unsigned j = 0; j <= out.tz_; ++j) {
      if (a.c_[i][j].is_zero()) continue;
      for (unsigned k = 0; i + k <= out.tu_; ++k)
        for (unsigned l = 0; j + l <= out.tz_; ++l) {
          if (b.c_[k][l].is_zero()) continue;
          out.c_[i + k][j + l] += a.c_[i][j] * b.c_[k][l];
        }
    }
  return out;
}

BiSeries BiSeries::operator*(const Rat& s) const {
  BiSeries out = *this;
  for (auto& row : out.c_)
    for (auto& v : row) v *= s;
  return out;
}

bool operator==(const BiSeries& a, const BiSeries& b) {
  if (a.tu_ != b.tu_ || a.tz_ != b.tz_) return false;
  return a.c_ == b.c_;
}

BiSeries BiSeries::exp_of() const {
  if (!c_[0][0].is_zero())
    throw std::invalid_argument("BiSeries::exp_of: nonzero constant term");
  BiSeries acc = constant(Rat(1), tu_, tz_);
  acc.narrowed_ = narrowed_;
  BiSeries pw = acc;
  const unsigned kmax = tu_ + tz_;
  for (unsigned k = 1; k <= kmax; ++k) {
    pw = pw * *this;
    if (pw.is_zero()) break;
    acc = acc + pw * inv_factorial(k);
  }
  return acc;
}

BiSeries BiSeries::log1p_of() const {
  if (!c_[0][0].is_zero())
    throw std::invalid_argument("BiSeries::log1p_of: nonzero constant term");
  BiSeries acc(tu_, tz_);
  acc.narrowed_ = narrowed_;
  BiSeries pw = constant(Rat(1), tu_, tz_);
  const unsigned kmax = tu_ + tz_;
  for (unsigned k = 1; k <= kmax; ++k) {
    pw = pw * *this;
    if (pw.is_zero()) break;
    Rat coeff = Rat(k % 2 ? 1 : -1) / Rat(mpz_class(k));
    acc = acc + pw * coeff;
  }
  return acc;
}

BiSeries BiSeries::inverse() const {
  const Rat c0 = c_[0][0];
  if (c0.is_zero())
    throw std::invalid_argument("BiSeries::inverse: zero constant term");
  // 1/(c0 (1+s)) = (1/c0) sum (-s)^k with s = this/c0 - 1.
  BiSeries s = *this * (Rat(1) / c0);
  s.c_[0][0] = Rat(0);
  BiSeries acc = constant(Rat(1), tu_, tz_);
  acc.narrowed_ = narrowed_;
  BiSeries pw = acc;
  const unsigned kmax = tu_ + tz_;
  for (unsigned k = 1; k <= kmax; ++k) {
    pw = pw * s;
    if (pw.is_zero()) break;
    acc = acc + pw * Rat(k % 2 ? -1 : 1);
  }
  return acc * (Rat(1) / c0);
}

std::string BiSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i <= tu_; ++i)
    for (unsigned j = 0; j <= tz_; ++j) {
      if (c_[i][j].is_zero()) continue;
      if (!first) os << " + ";
      os << c_[i][j].str();
      if (i) os << "*u" << (i > 1 ? "^" + std::to_string(i) : "");
      if (j) os << "*z" << (j > 1 ? "^" + std::to_string(j) : "");
      first = false;
    }
  if (first) os << "0";
  return os.str();
}

} // namespace taut
