#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "toprec/rational.hpp"
#include "toprec/symbol.hpp"

namespace toprec {

constexpr int kMaxMonomialVars = 12;

// Sparse monomial: (symbol, exponent) pairs sorted by symbol id, exponents > 0.
struct Monomial {
  std::uint8_t n = 0;
  std::array<Sym, kMaxMonomialVars> v{};
  std::array<std::uint16_t, kMaxMonomialVars> e{};

  static Monomial of(Sym s, int k);
  int exp(Sym s) const;
  int total_degree() const;
  bool is_one() const { return n == 0; }
  Monomial operator*(const Monomial& o) const;
  // Requires divisibility.
  Monomial operator/(const Monomial& o) const;
  bool divisible_by(const Monomial& o) const;
  Monomial without(Sym s) const;
  std::size_t hash() const;
};

// Lex order, smaller symbol id is more significant. Returns -1, 0, 1.
int compare(const Monomial& a, const Monomial& b);
inline bool operator==(const Monomial& a, const Monomial& b) { return compare(a, b) == 0; }
inline bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

class MPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  MPoly() = default;
  MPoly(const Rational& c);  // NOLINT(implicit)
  MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT(implicit)
  static MPoly var(Sym s);
  static MPoly monomial(const Monomial& m, const Rational& c);
  // Sorts and merges; drops zeros.
  static MPoly from_terms(std::vector<Term> terms);

  // Ascending monomial order; leading term is back().
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const Term& leading() const { return terms_.back(); }

  std::vector<Sym> vars() const;
  bool has_var(Sym s) const;
  int degree(Sym s) const;
  int min_degree(Sym s) const;
  int total_degree() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rational& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  MPoly mul_monomial(const Monomial& m, const Rational& c) const;
  MPoly pow(unsigned k) const;

  MPoly diff(Sym s) const;
  // index k holds the coefficient of s^k
  std::vector<MPoly> coeffs_in(Sym s) const;
  static MPoly from_coeffs(Sym s, const std::vector<MPoly>& c);
  MPoly subs(Sym s, const MPoly& value) const;
  MPoly subs(Sym s, const Rational& value) const;
  MPoly subs_many(const std::map<Sym, Rational>& values) const;
  // Simultaneous renaming; targets may collide with each other.
  MPoly rename(const std::vector<std::pair<Sym, Sym>>& map) const;

  // Positive c with this/c having coprime integer coefficients.
  Rational content() const;
  // this/content with positive leading coefficient.
  MPoly primitive() const;

  std::optional<MPoly> divide_exact(const MPoly& d) const;
  // Quotient by (s - c) with c free of s; nullopt if the remainder is nonzero.
  std::optional<MPoly> divide_linear(Sym s, const MPoly& c) const;

  bool operator==(const MPoly& o) const;
  bool operator!=(const MPoly& o) const { return !(*this == o); }
  std::size_t hash() const;

  // Human readable, variables rendered by name.
  std::string str() const;

 private:
  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

// gcd over Q, normalized by primitive(); gcd(0,0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);

struct MPolyHash {
  std::size_t operator()(const MPoly& p) const { return p.hash(); }
};

}  // namespace toprec
