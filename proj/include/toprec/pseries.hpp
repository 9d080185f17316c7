#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "toprec/mrat.hpp"

namespace toprec {

// Monomial hbar^h * prod w_i^{e_i}; exponents of w may be negative (1/w prefactors).
struct PKey {
  int h = 0;
  std::vector<int> w;
  bool operator<(const PKey& o) const { return h != o.h ? h < o.h : w < o.w; }
  bool operator==(const PKey& o) const { return h == o.h && w == o.w; }
};

// Truncated series in hbar (kept through hbar^cutoff) and polynomial in the
// parameters w_0..w_{k-1}, coefficients MRat. HbarSeries is the k = 0 case.
class PSeries {
 public:
  PSeries() = default;
  PSeries(int nparams, int cutoff) : np_(nparams), cutoff_(cutoff) {}
  static PSeries constant(int nparams, int cutoff, const MRat& c);
  static PSeries monomial(int nparams, int cutoff, PKey k, const MRat& c);

  int nparams() const { return np_; }
  int cutoff() const { return cutoff_; }
  const std::map<PKey, MRat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const PKey& k, const MRat& c);
  MRat coeff(const PKey& k) const;
  // sum of all terms with the given hbar exponent, as a series in the params only
  PSeries hbar_slice(int h) const;

  PSeries operator+(const PSeries& o) const;
  PSeries operator-(const PSeries& o) const;
  PSeries operator*(const PSeries& o) const;
  PSeries operator*(const MRat& c) const;
  PSeries operator*(const Rational& c) const;
  // exp of a series whose terms all carry hbar^2 or more.
  PSeries exp() const;
  // Reinterpret params: param i of this becomes param map[i] of a series with n params.
  PSeries embed(int n, const std::vector<int>& map) const;
  PSeries map_coeffs(const std::function<MRat(const MRat&)>& f) const;

  std::string str() const;

 private:
  int np_ = 0;
  int cutoff_ = 0;
  std::map<PKey, MRat> terms_;
};

using HbarSeries = PSeries;

}  // namespace toprec
