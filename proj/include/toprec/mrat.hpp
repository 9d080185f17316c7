#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "toprec/mpoly.hpp"

namespace toprec {

using FactorId = std::uint32_t;

struct FactorInfo {
  MPoly poly;  // primitive, positive leading coefficient
  std::vector<Sym> vars;
  // total degree 1: poly = scale * (lin_var - lin_value)
  bool linear = false;
  Sym lin_var = 0;
  MPoly lin_value;
  Rational scale;
  bool maybe_reducible = false;
};

// Global registry of denominator factors. Thread-safe; entries are immutable.
const FactorInfo& factor_info(FactorId id);
std::size_t factor_count();

using FactorList = std::vector<std::pair<FactorId, int>>;  // sorted by id, exps > 0

// p = unit * prod factor^e
struct Factorization {
  Rational unit;
  FactorList factors;
};
Factorization factorize(const MPoly& p);

// Rational function with factored denominator.
class MRat {
 public:
  MRat() = default;
  MRat(const Rational& c) : num_(c) {}  // NOLINT(implicit)
  MRat(long c) : num_(Rational(c)) {}   // NOLINT(implicit)
  MRat(const MPoly& p) : num_(p) {}     // NOLINT(implicit)
  static MRat var(Sym s) { return MRat(MPoly::var(s)); }
  static MRat fraction(const MPoly& num, const MPoly& den);
  static MRat from_factored(MPoly num, FactorList den);

  const MPoly& num() const { return num_; }
  MPoly den() const;  // expanded product
  const FactorList& den_factors() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  Rational constant_value() const;  // requires is_constant()
  std::vector<Sym> vars() const;
  bool has_var(Sym s) const;

  MRat operator-() const;
  friend MRat operator+(const MRat& a, const MRat& b);
  friend MRat operator-(const MRat& a, const MRat& b);
  friend MRat operator*(const MRat& a, const MRat& b);
  friend MRat operator/(const MRat& a, const MRat& b);
  MRat& operator+=(const MRat& b) { return *this = *this + b; }
  MRat& operator-=(const MRat& b) { return *this = *this - b; }
  MRat& operator*=(const MRat& b) { return *this = *this * b; }
  MRat operator*(const Rational& c) const;
  MRat inverse() const;
  MRat pow(int k) const;

  MRat diff(Sym s) const;
  MRat diff(Sym s, int k) const;

  // Simultaneous substitution. Throws std::domain_error naming the binding if a
  // denominator factor vanishes identically.
  MRat subs(const std::map<Sym, MRat>& bindings) const;
  MRat subs(Sym s, const MRat& value) const { return subs(std::map<Sym, MRat>{{s, value}}); }
  MRat subs_values(const std::map<Sym, Rational>& values) const;
  MRat rename(const std::vector<std::pair<Sym, Sym>>& map) const;

  // Zero test of a - b.
  friend bool operator==(const MRat& a, const MRat& b);
  friend bool operator!=(const MRat& a, const MRat& b) { return !(a == b); }

  std::string str() const;

 private:
  void reduce();
  MPoly num_;
  FactorList den_;
};

inline std::ostream& operator<<(std::ostream& os, const MRat& f) { return os << f.str(); }

// Product of registered factors with exponents, expanded.
MPoly expand_factors(const FactorList& f);

}  // namespace toprec
