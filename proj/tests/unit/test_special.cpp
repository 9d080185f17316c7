#include <gtest/gtest.h>

#include "json.hpp"
#include "toprec/classical.hpp"
#include "toprec/special.hpp"

using namespace toprec;

namespace {

MRat zc() { return MRat::var(curve_var()); }
MRat z(int i) { return MRat::var(zvar(i)); }

Curve airy() { return Curve("airy", zc() * zc() * Rational(1, 2), zc()); }

}  // namespace

TEST(VertexWeight, LeadingTermsForCubicX) {
  // x = z^3: d_z^2 x = 6z, s_2 = 1/24, so the exponent is -w * (1/24) (w hbar)^2 * 6z + ...
  PSeries v = vertex_weight(zc().pow(3), curve_var(), 2);
  EXPECT_EQ(v.coeff(PKey{0, {-1}}), MRat(-1));
  EXPECT_EQ(v.coeff(PKey{2, {2}}), zc() * Rational(1, 4));
}

TEST(VertexWeight, ClosedFamiliesMatchGenericExpansion) {
  Sym v = curve_var();
  for (auto fam : {WeightFamily::WittenR, WeightFamily::Hypermap, WeightFamily::Theta})
    for (int r : {2, 3}) {
      FamilyParams p{fam, r, Rational(1), Rational(1)};
      EXPECT_TRUE((vertex_weight(family_x(p, v), v, 4) - vertex_weight_closed(p, v, 4)).is_zero())
          << int(fam) << " r=" << r;
    }
}

TEST(VertexWeight, ClosedFamiliesAtOtherParameters) {
  Sym v = curve_var();
  FamilyParams w{WeightFamily::WittenR, 4, Rational(-2, 7), Rational(1)};
  EXPECT_TRUE((vertex_weight(family_x(w, v), v, 6) - vertex_weight_closed(w, v, 6)).is_zero());
  FamilyParams t{WeightFamily::Theta, 3, Rational(0), Rational(5, 3)};
  EXPECT_TRUE((vertex_weight(family_x(t, v), v, 6) - vertex_weight_closed(t, v, 6)).is_zero());
}

TEST(VertexWeight, WrongParameterIsDetected) {
  Sym v = curve_var();
  FamilyParams p{WeightFamily::Hypermap, 3, Rational(1), Rational(1)};
  FamilyParams q = p;
  q.r = 2;
  EXPECT_FALSE((vertex_weight(family_x(p, v), v, 4) - vertex_weight_closed(q, v, 4)).is_zero());
}

TEST(EdgeWeight, ClosedFormMatchesExponentialDefinition) {
  for (int cutoff : {0, 2, 4, 6})
    EXPECT_TRUE((edge_weight(zvar(1), zvar(2), 0, 1, 2, cutoff) -
                 edge_weight_exponential(zvar(1), zvar(2), 0, 1, 2, cutoff))
                    .is_zero())
        << cutoff;
}

TEST(ClosedYz, MatchesResidueRecursion) {
  const std::vector<Curve> curves{airy(), Curve("cubic", zc().pow(3) - zc() * MRat(3), zc())};
  for (const Curve& c : curves) {
    OmegaTable t(c);
    for (auto [g, m] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 2}, {2, 1}, {0, 4}})
      EXPECT_EQ(yz_closed_formula(c.x(), g, m).body, t.get(g, m, 0)) << c.name() << " " << g << "," << m;
  }
}

TEST(ClosedYz, UnstableTwoPointIsBergman) {
  EXPECT_EQ(yz_closed_formula(zc().pow(2), 0, 2).body, (z(1) - z(2)).pow(-2));
}

TEST(Psi, ExtractsKnownIntersectionNumbers) {
  OmegaTable t(airy());
  auto p = psi_extract(t.get(2, 1, 0), 2, 1);
  ASSERT_EQ(p.entries.size(), 1u);
  EXPECT_EQ(p.entries.at({4}), Rational(1, 1152));
  auto q = psi_extract(t.get(0, 4, 0), 0, 4);
  EXPECT_EQ(q.entries.at({1, 0, 0, 0}), Rational(1));
  auto r = psi_extract(t.get(2, 2, 0), 2, 2);
  EXPECT_EQ(r.entries.at({2, 3}), Rational(29, 5760));
}

TEST(Psi, RejectsTermsOutsideTheAiryShape) {
  EXPECT_THROW(psi_extract(z(1).pow(-3), 1, 1), std::domain_error);
  EXPECT_THROW(psi_extract((z(1) - MRat(1)).pow(-4), 1, 1), std::domain_error);
  EXPECT_THROW(psi_extract(z(1).pow(-6), 1, 1), std::domain_error);  // dimension violated
}

TEST(Psi, JsonShape) {
  PsiTable p;
  p.g = 1;
  p.m = 1;
  p.entries[{1}] = Rational(1, 24);
  auto j = nlohmann::json::parse(p.to_json());
  EXPECT_EQ(j.at("g"), 1);
  EXPECT_EQ(j.at("entries").at(0).at("k"), nlohmann::json::array({1}));
  EXPECT_EQ(j.at("entries").at(0).at("value"), "1/24");
}

TEST(Wk, TwoPointRightHandSideAtGenusOne) {
  // hand expansion: (u1^2 - u1 u2 + u2^2)/24 + u1 u2 / 12
  Sym u1 = intern("u1"), u2 = intern("u2");
  MRat a = MRat::var(u1), b = MRat::var(u2);
  EXPECT_EQ(dijkgraaf_rhs(1, u1, u2), (a * a + a * b + b * b) * Rational(1, 24));
}

TEST(Wk, DiagonalIdentity) {
  for (int k = 0; k <= 3; ++k) EXPECT_TRUE(identity_2k(k)) << k;
}

TEST(Wk, AllIdentitiesOnAiryTable) {
  OmegaTable t(airy());
  auto rep = wk_identities(t, 3);
  for (auto& [name, ok] : rep.items) EXPECT_TRUE(ok) << name;
  EXPECT_TRUE(rep.all_pass());
}

TEST(Wk, CorruptedTableFailsIdentities) {
  OmegaTable good(airy()), bad(airy(), ColumnSource::Given);
  bad.put(1, 1, 0, good.get(1, 1, 0) * Rational(2));
  bad.put(2, 1, 0, good.get(2, 1, 0));
  bad.put(1, 2, 0, good.get(1, 2, 0));
  bad.put(2, 2, 0, good.get(2, 2, 0));
  auto rep = wk_identities(bad, 2);
  EXPECT_FALSE(rep.all_pass());
  EXPECT_FALSE(rep.items[0].second);  // one-point g=1
  EXPECT_TRUE(rep.items[1].second);   // one-point g=2
}
