#pragma once

#include <map>
#include <string>
#include <vector>

#include "toprec/pseries.hpp"
#include "toprec/table.hpp"

namespace toprec {

// Vertex weight of the y = z closed formula: -(1/w) exp(-w (S(w hbar d_z) - 1) x(z)),
// one parameter w, coefficients in the variable v, through hbar^cutoff. The dz factor is implicit.
PSeries vertex_weight(const MRat& x_of_v, Sym v, int cutoff);

enum class WeightFamily { WittenR, Hypermap, Theta };
struct FamilyParams {
  WeightFamily family = WeightFamily::WittenR;
  int r = 2;
  Rational eps = 0;     // WittenR deformation
  Rational lambda = 1;  // Theta deformation
};
// x(z) of the family, in the variable v.
MRat family_x(const FamilyParams& p, Sym v);
// Closed-form vertex weight of the family expanded in hbar.
PSeries vertex_weight_closed(const FamilyParams& p, Sym v, int cutoff);

// Edge weight w_i w_j / ((z_i - z_j)^2 - hbar^2 (w_i + w_j)^2 / 4) between params pi, pj of np.
PSeries edge_weight(Sym zi, Sym zj, int pi, int pj, int np, int cutoff);
// The exponential definition (exp(hbar^2 w_i w_j S S (z_i - z_j)^{-2}) - 1) / hbar^2.
PSeries edge_weight_exponential(Sym zi, Sym zj, int pi, int pj, int np, int cutoff);

// omega^(g)_{m,0} for the curve (x, y = z) by the closed formula over simple graphs.
CorrDiff yz_closed_formula(const MRat& x_of_z, int g, int m);

// Intersection numbers read off the Airy-curve entry omega^(g)_{m,0}.
struct PsiTable {
  int g = 0;
  int m = 0;
  std::map<std::vector<int>, Rational> entries;  // sorted k's are not assumed
  std::string to_json() const;
};
// Throws std::domain_error on terms that are not of the form prod (2k+1)!!/z^{2k+2}
// with sum k = 3g-3+m.
PsiTable psi_extract(const MRat& body, int g, int m);

struct WkReport {
  std::vector<std::pair<std::string, bool>> items;
  bool all_pass() const;
};
// One-point values, the two-point generating identity against extracted numbers, and
// the diagonal identity for k <= g_max, using the given Airy table.
WkReport wk_identities(const OmegaTable& airy, int g_max);
// The diagonal identity at k: (D1 + D2)^{k+1} (z1 - z2)^{-2k-2} = (2k+1)!! (z1 z2)^{-2k-2}
// = (D1 D2)^{k+1} 1 / (2k+1)!!, with D f = -(f / z)'.
bool identity_2k(int k);
// Right-hand side of the two-point generating identity as a polynomial in u1, u2.
MRat dijkgraaf_rhs(int g, Sym u1, Sym u2);

}  // namespace toprec
