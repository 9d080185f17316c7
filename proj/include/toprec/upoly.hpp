#pragma once

#include <string>
#include <utility>
#include <vector>

#include "toprec/mpoly.hpp"
#include "toprec/rational.hpp"

namespace toprec {

// Dense univariate polynomial over Q, c[k] is the coefficient of z^k.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c);
  static UPoly constant(const Rational& a) { return UPoly({a}); }
  // (z - a)
  static UPoly linear_root(const Rational& a) { return UPoly({-a, 1}); }
  static UPoly from_mpoly(const MPoly& p, Sym z);  // throws if p has other variables
  MPoly to_mpoly(Sym z) const;

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational operator[](int k) const { return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0); }
  Rational eval(const Rational& z) const;

  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly operator*(const Rational& a) const;
  UPoly diff() const;
  // f(z + a)
  UPoly shift(const Rational& a) const;
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  UPoly monic() const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  std::string str(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

UPoly ugcd(UPoly a, UPoly b);  // monic, gcd(0,0)=0

// Rational roots with multiplicities, plus the cofactor left after removing them.
struct RootSplit {
  std::vector<std::pair<Rational, int>> roots;
  UPoly rest;
};
RootSplit rational_roots(const UPoly& p);

// Square-free decomposition: p = lead * prod s_i^i.
std::vector<std::pair<UPoly, int>> squarefree(const UPoly& p);

}  // namespace toprec
