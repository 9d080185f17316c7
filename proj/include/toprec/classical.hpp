#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "toprec/curve.hpp"
#include "toprec/series.hpp"
#include "toprec/table.hpp"

namespace toprec {

// omega^(g)_{m,0} by the residue recursion at the zeros of dx.
MRat tr_entry(const OmegaTable& t, int g, int m);

// Fills the n = 0 column for 2g-2+m <= chi_max (recursion source).
OmegaTable tr_run(const Curve& c, int chi_max);

// Result of a verifier: ok flag plus a short report of the first failure.
struct Check {
  bool ok = true;
  std::string detail;
  explicit operator bool() const { return ok; }
  static Check pass() { return {}; }
  static Check fail(std::string why) { return {false, std::move(why)}; }
};

// f(sigma(z)) - p as a series, where sigma is the deck transformation at rp.
ShiftFn deck_placement(const Curve& c, const RamificationPoint& rp);

// f univariate in v: f(z) + f(sigma(z)) holomorphic at rp.
Check xi_membership(const Curve& c, const MRat& f, Sym v, const RamificationPoint& rp);
// Laurent data of f at rp.location: same test on the stored window (needs orders lo..-1).
Check xi_membership(const Curve& c, const LaurentData& f, const RamificationPoint& rp);

// Deterministic generic rational values for spectator variables.
struct ProbeSet {
  std::uint64_t seed = 0;
  std::map<Sym, Rational> values;
};
// Values avoid `avoid` and are pairwise distinct.
ProbeSet make_probes(std::uint64_t seed, const std::vector<Sym>& vars, const std::vector<Rational>& avoid);
constexpr int kProbeSets = 3;
constexpr std::uint64_t kDefaultSeed = 20240607;

// Linear loop equation for omega^(g)_{m+1,0} at rp (form version: simple zero).
Check check_linear_loop(const OmegaTable& t, int g, int m, const RamificationPoint& rp,
                        std::uint64_t seed = kDefaultSeed);
// Quadratic loop equation for (g, m) at rp (quadratic differential with a double zero).
Check check_quadratic_loop(const OmegaTable& t, int g, int m, const RamificationPoint& rp,
                           std::uint64_t seed = kDefaultSeed);
// Xi membership of a supplied [w^{r-1}] W coefficient in the distinguished variable v.
Check check_r_loop(const Curve& c, const MRat& wcal_coeff, Sym v, int r, const RamificationPoint& rp,
                   std::uint64_t seed = kDefaultSeed);

// Projection property for a stable (g, m) of the n = 0 column. Evaluates the
// residue formula literally and also checks the pole-location shortcut.
Check check_projection(const OmegaTable& t, int g, int m);

// f dz is exact: every residue vanishes. Throws on irrational poles.
bool exactness_check(const MRat& f, Sym z);

}  // namespace toprec
