#include "taut/unipoly.hpp"
#include <sstream>
#include <stdexcept>

namespace taut {

UniPoly UniPoly::constant(const Rat& r) {
  if (r.is_zero()) return UniPoly();
  return UniPoly(std::vector<Rat>{r});
}

UniPoly UniPoly::monomial(const Rat& coeff, int deg) {
  if (coeff.is_zero()) return UniPoly();
  std::vector<Rat> c(deg + 1);
  c[deg] = coeff;
  return UniPoly(std::move(c));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rat UniPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j)
      c[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(c));
}

UniPoly UniPoly::operator*(const Rat& s) const {
  if (s.is_zero()) return UniPoly();
  std::vector<Rat> c(c_);
  for (auto& x : c) x *= s;
  return UniPoly(std::move(c));
}

std::string UniPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rat a = coeff(i);
    if (a.is_zero()) continue;
    if (!first) os << (a.sign() < 0 ? " - " : " + ");
    else if (a.sign() < 0) os << "-";
    Rat mag = a.sign() < 0 ? -a : a;
    bool unit = (mag == Rat(1)) && i > 0;
    if (!unit) os << mag.str();
    if (i > 0) {
      if (!unit) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

UniPoly interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
  const size_t n = points.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (points[i].first == points[j].first)
        throw std::invalid_argument("interpolate: repeated x value");
  // Newton form: divided differences, then expand.
  std::vector<Rat> dd(n);
  for (size_t i = 0; i < n; ++i) dd[i] = points[i].second;
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) /
              (points[i].first - points[i - level].first);
  UniPoly result;
  UniPoly basis = UniPoly::constant(Rat(1));
  for (size_t i = 0; i < n; ++i) {
    result += basis * dd[i];
    basis = basis * UniPoly(std::vector<Rat>{-points[i].first, Rat(1)});
  }
  return result;
}

} // namespace taut
