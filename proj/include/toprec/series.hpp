#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "toprec/mrat.hpp"
#include "toprec/rational.hpp"
#include "toprec/upoly.hpp"

namespace toprec {

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const MRat& c) { return c.is_zero(); }

// Truncated Laurent series sum_{k=lo}^{hi} c_k t^k; coefficients above hi are unknown.
template <class C>
struct Laurent {
  int lo = 0;
  int hi = -1;
  std::vector<C> c;

  static Laurent zero(int hi_) {
    Laurent s;
    s.lo = hi_ + 1;
    s.hi = hi_;
    return s;
  }
  const C& at(int k) const {
    static const C kZero{};
    if (k > hi) throw std::out_of_range("Laurent coefficient t^" + std::to_string(k) + " beyond valid order " + std::to_string(hi));
    if (k < lo) return kZero;
    return c[k - lo];
  }
  // First nonzero order; hi+1 if all known coefficients vanish.
  int valuation() const {
    for (int k = lo; k <= hi; ++k)
      if (!coeff_is_zero(c[k - lo])) return k;
    return hi + 1;
  }
  Laurent truncated(int new_hi) const {
    if (new_hi > hi) throw std::out_of_range("cannot extend a truncated series");
    Laurent s;
    s.lo = lo;
    s.hi = new_hi;
    s.c.assign(c.begin(), c.begin() + std::max(0, new_hi - lo + 1));
    return s;
  }
};

template <class C>
Laurent<C> operator+(const Laurent<C>& a, const Laurent<C>& b) {
  Laurent<C> r;
  r.lo = std::min(a.lo, b.lo);
  r.hi = std::min(a.hi, b.hi);
  for (int k = r.lo; k <= r.hi; ++k) {
    C v{};
    if (k >= a.lo) v = a.c[k - a.lo];
    if (k >= b.lo) v = v + b.c[k - b.lo];
    r.c.push_back(v);
  }
  return r;
}

template <class C>
Laurent<C> scale(const Laurent<C>& a, const C& s) {
  Laurent<C> r = a;
  for (auto& x : r.c) x = x * s;
  return r;
}

template <class C>
Laurent<C> operator-(const Laurent<C>& a, const Laurent<C>& b) {
  return a + scale(b, C(-1));
}

// Valid window: lo = a.lo + b.lo, hi = min(a.hi + b.lo, b.hi + a.lo).
template <class C>
Laurent<C> operator*(const Laurent<C>& a, const Laurent<C>& b) {
  Laurent<C> r;
  r.lo = a.lo + b.lo;
  r.hi = std::min(a.hi + b.lo, b.hi + a.lo);
  for (int k = r.lo; k <= r.hi; ++k) {
    C v{};
    int i0 = std::max(a.lo, k - b.hi), i1 = std::min(a.hi, k - b.lo);
    for (int i = i0; i <= i1; ++i) {
      const C& x = a.c[i - a.lo];
      if (coeff_is_zero(x)) continue;
      const C& y = b.c[k - i - b.lo];
      if (coeff_is_zero(y)) continue;
      v = v + x * y;
    }
    r.c.push_back(v);
  }
  return r;
}

// Drop leading zero coefficients so that lo is the true valuation when known.
template <class C>
Laurent<C> normalized(const Laurent<C>& a) {
  int v = a.valuation();
  Laurent<C> r;
  r.lo = v;
  r.hi = a.hi;
  for (int k = v; k <= a.hi; ++k) r.c.push_back(a.c[k - a.lo]);
  return r;
}

// Exact LaurentData on a univariate rational function.
struct LaurentData {
  Rational point;
  int min_order = 0;
  int max_order = 0;
  std::vector<Rational> coeffs;  // orders min_order..max_order
};

// f univariate (or constant); window [lo, hi] inclusive.
LaurentData taylor_at(const MRat& f, Sym z, const Rational& p, int lo, int hi);
Laurent<Rational> series_at(const UPoly& num, const UPoly& den, const Rational& p, int hi);

// Coefficients c_0..c_K of S(z) = (e^{z/2} - e^{-z/2})/z.
std::vector<Rational> s_series(int K);

// Composition f(s(t)) for power series f (f[k] coefficient of u^k), s with s_0 = 0, through order K.
std::vector<Rational> compose(const std::vector<Rational>& f, const std::vector<Rational>& s, int K);

// A variable placed at point + shift(t), shift given through any requested order.
using ShiftFn = std::function<std::vector<Rational>(int)>;
ShiftFn identity_shift();
ShiftFn exact_shift(std::vector<Rational> coeffs);

struct Placement {
  Sym var;
  Rational point;
  ShiftFn shift;
};

Sym series_var();

// Expansion of f after each placement var -> point + shift(t), valid through t^N.
// Coefficients are MRat in the remaining variables. lo is the true valuation
// even when it exceeds N (then no coefficients are stored).
Laurent<MRat> expand(const MRat& f, const std::vector<Placement>& pl, int N);
// Valuation in t of nonzero f after the placements.
int expand_valuation(const MRat& f, const std::vector<Placement>& pl);

// A series known by a valuation lower bound and computable through any order.
struct LazySeries {
  int lo = 0;
  std::function<Laurent<MRat>(int)> through;
  bool zero = false;
};
LazySeries lazy_expand(const MRat& f, std::vector<Placement> pl);
LazySeries lazy_series(int lo, std::function<Laurent<MRat>(int)> through);
// Product of the factors valid through t^N.
Laurent<MRat> product_through(const std::vector<LazySeries>& fs, int N);
// Sum of products, valid through t^N; lo of the result is the minimum term valuation.
Laurent<MRat> sum_of_products_through(const std::vector<std::vector<LazySeries>>& terms, int N);
// Valuation lower bound of a product / sum of products.
int product_lo(const std::vector<LazySeries>& fs);
int sum_of_products_lo(const std::vector<std::vector<LazySeries>>& terms);

}  // namespace toprec
