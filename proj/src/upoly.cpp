#include "toprec/upoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace toprec {

UPoly::UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::from_mpoly(const MPoly& p, Sym z) {
  std::vector<Rational> c(std::max(p.degree(z), 0) + 1, Rational(0));
  for (auto& [m, a] : p.terms()) {
    int k = m.exp(z);
    if (m.n > (k ? 1 : 0)) throw std::invalid_argument("polynomial is not univariate in " + symbol_name(z));
    c[k] += a;
  }
  return UPoly(std::move(c));
}

MPoly UPoly::to_mpoly(Sym z) const {
  std::vector<MPoly::Term> t;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) t.emplace_back(Monomial::of(z, static_cast<int>(k)), c_[k]);
  return MPoly::from_terms(std::move(t));
}

Rational UPoly::eval(const Rational& z) const {
  Rational r = 0;
  for (std::size_t k = c_.size(); k-- > 0;) r = r * z + c_[k];
  return r;
}

UPoly UPoly::operator+(const UPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o * Rational(-1); }

UPoly UPoly::operator*(const UPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::operator*(const Rational& a) const {
  std::vector<Rational> r = c_;
  for (auto& x : r) x *= a;
  return UPoly(std::move(r));
}

UPoly UPoly::diff() const {
  std::vector<Rational> r;
  for (std::size_t k = 1; k < c_.size(); ++k) r.push_back(c_[k] * static_cast<long>(k));
  return UPoly(std::move(r));
}

UPoly UPoly::shift(const Rational& a) const {
  UPoly r;
  UPoly lin({a, 1});
  for (std::size_t k = c_.size(); k-- > 0;) r = r * lin + UPoly::constant(c_[k]);
  return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("univariate division by zero");
  std::vector<Rational> r = c_;
  int dd = d.degree();
  std::vector<Rational> q(std::max(degree() - dd + 1, 0), Rational(0));
  for (int k = degree(); k >= dd; --k) {
    Rational f = r[k] / d.lead();
    q[k - dd] = f;
    if (f == 0) continue;
    for (int j = 0; j <= dd; ++j) r[k - dd + j] -= f * d.c_[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / lead());
}

std::string UPoly::str(const std::string& var) const { return to_mpoly(intern(var)).str(); }

UPoly ugcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

// integer-coefficient primitive version
std::vector<Integer> integer_coeffs(const UPoly& p) {
  Integer l = 1;
  for (auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (auto& c : p.coeffs()) {
    Rational s = c * l;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
  }
  for (auto& x : out) x /= g;
  return out;
}

}  // namespace

RootSplit rational_roots(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  RootSplit out;
  UPoly rest = p;
  // z = 0 first
  {
    int k = 0;
    while (k < rest.degree() && rest[k] == 0) ++k;
    if (k > 0) {
      out.roots.emplace_back(Rational(0), k);
      std::vector<Rational> c(rest.coeffs().begin() + k, rest.coeffs().end());
      rest = UPoly(std::move(c));
    }
  }
  while (rest.degree() >= 1) {
    auto ic = integer_coeffs(rest);
    auto ps = divisors(ic.front());
    auto qs = divisors(ic.back());
    bool found = false;
    for (auto& q : qs) {
      for (auto& pp : ps) {
        for (int sgn : {1, -1}) {
          Rational cand(pp * sgn, q);
          cand.canonicalize();
          if (cand.get_den() != q) continue;  // seen with a smaller q
          if (rest.eval(cand) != 0) continue;
          int mult = 0;
          while (rest.degree() >= 1 && rest.eval(cand) == 0) {
            rest = rest.divmod(UPoly::linear_root(cand)).first;
            ++mult;
          }
          out.roots.emplace_back(cand, mult);
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  std::sort(out.roots.begin(), out.roots.end(), [](auto& a, auto& b) { return a.first < b.first; });
  out.rest = rest;
  return out;
}

std::vector<std::pair<UPoly, int>> squarefree(const UPoly& p) {
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() < 1) return out;
  // Yun's algorithm
  UPoly f = p.monic();
  UPoly a = ugcd(f, f.diff());
  UPoly b = f.divmod(a).first;
  UPoly c = f.diff().divmod(a).first;
  UPoly d = c - b.diff();
  int i = 1;
  while (b.degree() >= 1) {
    UPoly g = ugcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g, i);
    b = b.divmod(g).first;
    c = d.divmod(g).first;
    d = c - b.diff();
    ++i;
  }
  return out;
}

}  // namespace toprec
