#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "toprec/classical.hpp"
#include "toprec/series.hpp"

using namespace toprec;

namespace {

MRat zc() { return MRat::var(curve_var()); }
MRat z(int i) { return MRat::var(zvar(i)); }

Curve airy() { return Curve("airy", zc() * zc() * Rational(1, 2), zc()); }
Curve acc() { return Curve("acc", zc() + zc().inverse(), (zc() - MRat(3)) * (zc() - MRat(3))); }

std::vector<Rational> locations(const Curve& c, Side s) {
  std::vector<Rational> out;
  for (auto& rp : c.ramification_points(s)) out.push_back(rp.location);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Curve, RamificationPointsOfTestCurves) {
  EXPECT_EQ(locations(airy(), Side::X), std::vector<Rational>{0});
  EXPECT_EQ(locations(acc(), Side::X), (std::vector<Rational>{-1, 1}));
  EXPECT_EQ(locations(acc(), Side::Y), std::vector<Rational>{3});
}

TEST(Curve, RejectsCoincidentZerosOfDxAndDy) {
  EXPECT_THROW(Curve("bad", zc() * zc(), zc().pow(3)), CurveValidationError);
}

TEST(Curve, RejectsConstantX) { EXPECT_THROW(Curve("bad", MRat(2), zc()), CurveValidationError); }

TEST(Curve, DeckSeriesIsAnInvolution) {
  for (const Curve& c : {airy(), acc(), acc().swapped()})
    for (auto& rp : c.ramification_points(Side::X)) {
      const int K = 8;
      auto s = c.deck_series(rp, K);
      auto ss = compose(s, s, K);
      for (int k = 0; k <= K; ++k) EXPECT_EQ(ss[k], Rational(k == 1 ? 1 : 0)) << c.name() << " order " << k;
    }
}

TEST(Curve, DeckSeriesPreservesX) {
  // x(p + sigma(t)) = x(p + t) through the computed order
  Curve c = acc();
  for (auto& rp : c.ramification_points(Side::X)) {
    const int K = 6;
    auto s = c.deck_series(rp, K);
    auto xt = taylor_at(c.x(), curve_var(), rp.location, 0, K);
    std::vector<Rational> xs(xt.coeffs.begin(), xt.coeffs.end());
    auto shifted = xs;
    shifted[0] = 0;
    auto lhs = compose(shifted, s, K);
    lhs[0] += xs[0];
    for (int k = 0; k <= K; ++k) EXPECT_EQ(lhs[k], xs[k]) << "order " << k;
  }
}

TEST(Classical, AiryOracles) {
  // independent oracle: omega = sum <tau_k...> prod (2k+1)!!/z^{2k+2} with
  // <tau_0^3>_0 = 1, <tau_1>_1 = 1/24, <tau_0 tau_2>_1 = <tau_1^2>_1 = 1/24, <tau_4>_2 = 1/1152
  OmegaTable t = tr_run(airy(), 3);
  EXPECT_EQ(t.get(0, 3, 0), (z(1) * z(2) * z(3)).pow(-2));
  EXPECT_EQ(t.get(1, 1, 0), z(1).pow(-4) * Rational(1, 8));
  MRat w12 = (z(1).pow(-2) * z(2).pow(-6) + z(1).pow(-6) * z(2).pow(-2)) * Rational(15, 24) +
             (z(1) * z(2)).pow(-4) * Rational(9, 24);
  EXPECT_EQ(t.get(1, 2, 0), w12);
  EXPECT_EQ(t.get(2, 1, 0), z(1).pow(-10) * Rational(945, 1152));
}

TEST(Classical, AccCurveGenusZeroThreePoint) {
  // omega_{0,3} = sum_p Res B B B / (dx dy) = sum_p prod 1/(z_i - p)^2 / (x''(p) y'(p))
  // x'' = 2/p^3, y' = 2(p-3): p=1 gives 1/(2*(-4)), p=-1 gives 1/((-2)*(-8))
  OmegaTable t(acc());
  MRat at1 = ((z(1) - MRat(1)) * (z(2) - MRat(1)) * (z(3) - MRat(1))).pow(-2) * Rational(-1, 8);
  MRat atm1 = ((z(1) + MRat(1)) * (z(2) + MRat(1)) * (z(3) + MRat(1))).pow(-2) * Rational(1, 16);
  EXPECT_EQ(t.get(0, 3, 0), at1 + atm1);
}

TEST(Classical, SymmetricUnderPermutations) {
  OmegaTable t(acc());
  const MRat& w = t.get(0, 4, 0);
  EXPECT_EQ(w.rename({{zvar(1), zvar(3)}, {zvar(3), zvar(1)}}), w);
  EXPECT_EQ(w.rename({{zvar(2), zvar(4)}, {zvar(4), zvar(2)}}), w);
}

TEST(Classical, ShiftOfXLeavesStableEntriesUnchanged) {
  OmegaTable a(acc()), b(acc().shifted_x(Rational(7, 3)));
  EXPECT_EQ(a.get(1, 1, 0), b.get(1, 1, 0));
  EXPECT_EQ(a.get(0, 3, 0), b.get(0, 3, 0));
}

TEST(Classical, LoopEquationsAndProjection) {
  for (const Curve& c : {airy(), acc()}) {
    OmegaTable t(c);
    for (auto& rp : c.ramification_points(Side::X)) {
      for (auto [g, m] : std::vector<std::pair<int, int>>{{0, 2}, {1, 0}, {1, 1}, {0, 3}}) {
        EXPECT_TRUE(check_linear_loop(t, g, m, rp).ok) << c.name() << " " << g << "," << m;
        auto q = check_quadratic_loop(t, g, m, rp);
        EXPECT_TRUE(q.ok) << c.name() << " " << g << "," << m << ": " << q.detail;
      }
    }
    for (auto [g, m] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 2}, {0, 4}})
      EXPECT_TRUE(check_projection(t, g, m).ok) << c.name() << " " << g << "," << m;
  }
}

namespace {

// Given table with the genuine entries through chi = 2 and omega^(1)_{1,0} corrupted.
OmegaTable corrupted(const Curve& c, const MRat& extra) {
  OmegaTable good(c), bad(c, ColumnSource::Given);
  for (auto [g, m] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}})
    bad.put(g, m, 0, good.get(g, m, 0) + (g == 1 && m == 1 ? extra : MRat()));
  return bad;
}

}  // namespace

TEST(Classical, LinearLoopCatchesOddCorruption) {
  Curve c = acc();
  auto rp = c.ramification_points(Side::X)[0];
  OmegaTable bad = corrupted(c, (z(1) - MRat(rp.location)).pow(-3));
  EXPECT_FALSE(check_linear_loop(bad, 1, 0, rp).ok);
}

TEST(Classical, QuadraticLoopCatchesExactCorruption) {
  Curve c = acc();
  auto rp = c.ramification_points(Side::X)[0];
  OmegaTable bad = corrupted(c, (z(1) - MRat(rp.location)).pow(-2));
  EXPECT_TRUE(check_linear_loop(bad, 1, 0, rp).ok);  // invisible to the linear equation
  EXPECT_FALSE(check_quadratic_loop(bad, 1, 0, rp).ok);
}

TEST(Classical, ProjectionCatchesCorruption) {
  Curve c = acc();
  OmegaTable bad = corrupted(c, (z(1) - MRat(5)).pow(-2));
  EXPECT_FALSE(check_projection(bad, 1, 1).ok);
}

TEST(Classical, XiMembershipOnAiry) {
  Curve c = airy();
  auto rp = c.ramification_points(Side::X)[0];
  EXPECT_TRUE(xi_membership(c, zc().inverse(), curve_var(), rp).ok);
  EXPECT_TRUE(xi_membership(c, zc().pow(-3) + zc() * MRat(5), curve_var(), rp).ok);
  EXPECT_FALSE(xi_membership(c, zc().pow(-2), curve_var(), rp).ok);
}

TEST(Classical, ExactnessCheck) {
  EXPECT_TRUE(exactness_check((zc() - MRat(1)).pow(-2) + zc().pow(-3), curve_var()));
  EXPECT_FALSE(exactness_check((zc() - MRat(1)).inverse(), curve_var()));
}

TEST(Classical, ProbesAreDeterministicAndAvoidGivenValues) {
  std::vector<Sym> vars{zvar(1), zvar(2), zvar(3)};
  auto a = make_probes(17, vars, {Rational(1), Rational(-1)});
  auto b = make_probes(17, vars, {Rational(1), Rational(-1)});
  EXPECT_EQ(a.values, b.values);
  std::set<Rational> seen;
  for (auto& [s, v] : a.values) {
    EXPECT_NE(v, 1);
    EXPECT_NE(v, -1);
    EXPECT_NE(v, 0);
    EXPECT_TRUE(seen.insert(v).second);
  }
}
