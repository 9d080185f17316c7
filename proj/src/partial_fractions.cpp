#include "toprec/partial_fractions.hpp"

#include <stdexcept>

#include "toprec/series.hpp"
#include "toprec/upoly.hpp"

namespace toprec {

PartialFractions partial_fractions(const MRat& f, Sym z) {
  for (Sym s : f.vars())
    if (s != z) throw std::invalid_argument("partial_fractions: not univariate in " + symbol_name(z));
  PartialFractions out;
  UPoly num = UPoly::from_mpoly(f.num(), z);
  UPoly den = UPoly::from_mpoly(f.den(), z);
  std::vector<Rational> poles;
  for (auto& [id, e] : f.den_factors()) {
    const FactorInfo& info = factor_info(id);
    if (!info.linear || !info.lin_value.is_constant())
      throw std::domain_error("partial_fractions: irrational poles at the zeros of " + info.poly.str());
    poles.push_back(info.lin_value.constant_term());
  }
  out.poly_part = num.divmod(den).first.to_mpoly(z);
  for (auto& p : poles) {
    auto s = series_at(num, den, p, -1);
    std::vector<Rational> c(std::max(0, -s.lo), Rational(0));
    for (int k = s.lo; k <= -1; ++k) c[-k - 1] = s.at(k);
    out.parts[p] = c;
  }
  return out;
}

MRat reassemble(const PartialFractions& pf, Sym z) {
  MRat r(pf.poly_part);
  for (auto& [p, c] : pf.parts) {
    MRat base = (MRat::var(z) - MRat(p)).inverse();
    MRat pw = base;
    for (auto& ck : c) {
      r = r + pw * MRat(ck);
      pw = pw * base;
    }
  }
  return r;
}

MRat principal_part(const MRat& f, Sym z, const MPoly& a) {
  Sym u = intern("__pp_u");
  MRat g = f.subs(z, MRat(a) + MRat::var(u));
  auto s = expand(g, {Placement{u, Rational(0), identity_shift()}}, -1);
  MRat out;
  MRat base = (MRat::var(z) - MRat(a)).inverse();
  for (int k = s.lo; k <= -1; ++k) {
    if (s.at(k).is_zero()) continue;
    out = out + s.at(k) * base.pow(-k);
  }
  return out;
}

std::vector<MPoly> pole_locations(const MRat& f, Sym z) {
  std::vector<MPoly> out;
  for (auto& [id, e] : f.den_factors()) {
    const FactorInfo& info = factor_info(id);
    if (std::find(info.vars.begin(), info.vars.end(), z) == info.vars.end()) continue;
    if (!info.linear || info.lin_var != z) {
      // linear in another variable first; try solving for z
      if (info.linear && info.poly.degree(z) == 1) {
        auto c = info.poly.coeffs_in(z);
        if (c[1].is_constant()) {
          out.push_back(-c[0] * (Rational(1) / c[1].constant_term()));
          continue;
        }
      }
      throw std::domain_error("pole locus not linear in " + symbol_name(z) + ": " + info.poly.str());
    }
    out.push_back(info.lin_value);
  }
  return out;
}

}  // namespace toprec
