#pragma once

#include <map>
#include <vector>

#include "toprec/mrat.hpp"

namespace toprec {

struct PartialFractions {
  MPoly poly_part;
  // pole -> [c_1, c_2, ...], the coefficient of 1/(z-p)^k at index k-1
  std::map<Rational, std::vector<Rational>> parts;
};

// f univariate in z with rational poles only.
PartialFractions partial_fractions(const MRat& f, Sym z);
MRat reassemble(const PartialFractions& pf, Sym z);

// Multivariate: principal part of f in z at z = a, where a is a constant or a
// polynomial free of z (e.g. another variable). Coefficients are MRat in the
// remaining variables.
MRat principal_part(const MRat& f, Sym z, const MPoly& a);

// Pole locations of f in z: each denominator factor involving z must be linear in z.
// Throws std::domain_error naming the offending factor otherwise.
std::vector<MPoly> pole_locations(const MRat& f, Sym z);

}  // namespace toprec
