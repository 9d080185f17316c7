#include "toprec/classical.hpp"

#include <random>
#include <set>
#include <sstream>

#include "toprec/partial_fractions.hpp"

namespace toprec {

namespace {

Sym sym_z() {
  static const Sym s = intern("_Zloc");
  return s;
}
Sym sym_s() {
  static const Sym s = intern("_Sloc");
  return s;
}

// s'(t) at rp as a lazy series
LazySeries deck_derivative(const Curve& c, const RamificationPoint& rp) {
  return lazy_series(0, [c, rp](int N) {
    Laurent<MRat> r;
    r.lo = 0;
    r.hi = N;
    if (N < 0) return Laurent<MRat>::zero(N);
    auto s = c.deck_series(rp, N + 1);
    for (int k = 0; k <= N; ++k) r.c.push_back(MRat(s[k + 1] * (k + 1)));
    return r;
  });
}

std::vector<Placement> zs_placements(const Curve& c, const RamificationPoint& rp) {
  return {{sym_z(), rp.location, identity_shift()}, {sym_s(), rp.location, c.deck_shift(rp)}};
}

// Bracket of the recursion: omega^(g-1)_{m+1}(Z,S,z_K) + sum' omega(Z,z_I1) omega(S,z_I2), as products.
std::vector<std::vector<MRat>> bracket_terms(const OmegaTable& t, int g, int m) {
  std::vector<std::vector<MRat>> terms;
  const Sym Z = sym_z(), S = sym_s();
  std::vector<Sym> rest;
  for (int i = 2; i <= m; ++i) rest.push_back(zvar(i));
  if (g >= 1) {
    std::vector<Sym> vars{Z, S};
    vars.insert(vars.end(), rest.begin(), rest.end());
    terms.push_back({place_body(t.get(g - 1, m + 1, 0), vars)});
  }
  const int k = static_cast<int>(rest.size());
  for (int g1 = 0; g1 <= g; ++g1) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<Sym> a{Z}, b{S};
      for (int i = 0; i < k; ++i) ((mask >> i) & 1u ? a : b).push_back(rest[i]);
      int g2 = g - g1;
      if ((g1 == 0 && a.size() == 1) || (g2 == 0 && b.size() == 1)) continue;
      terms.push_back({place_body(t.get(g1, static_cast<int>(a.size()), 0), a),
                       place_body(t.get(g2, static_cast<int>(b.size()), 0), b)});
    }
  }
  return terms;
}

std::string describe(const Triple& tr, const RamificationPoint& rp) {
  return "(g,m)=(" + std::to_string(tr.g) + "," + std::to_string(tr.m) + ") at z=" + to_string(rp.location);
}

}  // namespace

ShiftFn deck_placement(const Curve& c, const RamificationPoint& rp) { return c.deck_shift(rp); }

MRat tr_entry(const OmegaTable& t, int g, int m) {
  if (!is_stable(g, m, 0)) throw std::invalid_argument("tr_entry: unstable index");
  const Curve& c = t.curve();
  const Sym Z = sym_z(), S = sym_s(), z1 = zvar(1);
  MRat x1 = MRat::var(z1);
  MRat kernel = ((x1 - MRat::var(S)).inverse() - (x1 - MRat::var(Z)).inverse()) /
                ((c.fn_at(Side::Y, Z) - c.fn_at(Side::Y, S)) * c.dfn_at(Side::X, Z));
  auto terms = bracket_terms(t, g, m);
  MRat total;
  for (const auto& rp : c.ramification_points(Side::X)) {
    auto pl = zs_placements(c, rp);
    std::vector<std::vector<LazySeries>> lazy;
    for (auto& term : terms) {
      std::vector<LazySeries> fs;
      for (auto& f : term) fs.push_back(lazy_expand(f, pl));
      lazy.push_back(std::move(fs));
    }
    int blo = sum_of_products_lo(lazy);
    std::vector<LazySeries> outer{lazy_expand(kernel, pl), deck_derivative(c, rp)};
    int klo = product_lo(outer);
    if (klo + blo > -1) continue;
    auto kser = product_through(outer, -1 - blo);
    auto bser = sum_of_products_through(lazy, -1 - klo);
    auto prod = kser * bser;
    total += prod.at(-1);
  }
  return total * Rational(1, 2);
}

OmegaTable tr_run(const Curve& c, int chi_max) {
  OmegaTable t(c, ColumnSource::Recursion);
  for (int chi = 1; chi <= chi_max; ++chi)
    for (int g = 0; 2 * g - 2 < chi; ++g) {
      int m = chi + 2 - 2 * g;
      if (m >= 1) t.get(g, m, 0);
    }
  return t;
}

Check xi_membership(const Curve& c, const MRat& f, Sym v, const RamificationPoint& rp) {
  for (Sym s : f.vars())
    if (s != v) throw std::invalid_argument("xi_membership: f must be univariate in " + symbol_name(v));
  if (f.is_zero()) return Check::pass();
  std::vector<Placement> p1{{v, rp.location, identity_shift()}};
  std::vector<Placement> p2{{v, rp.location, c.deck_shift(rp)}};
  auto a = expand(f, p1, -1);
  auto b = expand(f, p2, -1);
  for (int k = std::min(a.lo, b.lo); k <= -1; ++k) {
    MRat sum = a.at(k) + b.at(k);
    if (!sum.is_zero())
      return Check::fail("f(z)+f(sigma(z)) has a pole of order " + std::to_string(-k) + " at z=" +
                         to_string(rp.location) + " (coefficient " + sum.str() + ")");
  }
  return Check::pass();
}

Check xi_membership(const Curve& c, const LaurentData& f, const RamificationPoint& rp) {
  if (f.point != rp.location) throw std::invalid_argument("xi_membership: Laurent data at a different point");
  if (f.min_order >= 0) return Check::pass();
  if (f.max_order < -1) throw std::invalid_argument("xi_membership: Laurent data must reach order -1");
  const int lo = f.min_order;
  const int K = -1 - lo;  // s^k needed through t^{-1}, i.e. relative order K
  auto s = c.deck_series(rp, K + 1);
  // s = s1 t (1 + u), u = sum_{j>=1} (s_{j+1}/s1) t^j
  Rational s1 = s[1];
  std::vector<Rational> u(K + 1, Rational(0));
  for (int j = 1; j <= K; ++j) u[j] = s[j + 1] / s1;
  std::vector<Rational> total(K + 1, Rational(0));  // coefficients of t^{lo..-1}
  for (int k = lo; k <= -1; ++k) {
    const Rational& ck = f.coeffs[k - lo];
    if (ck == 0) continue;
    // (1+u)^k as a series via binomial composition
    std::vector<Rational> bin(K + 1);
    for (int j = 0; j <= K; ++j) bin[j] = binomial(Rational(k), j);
    auto pw = compose(bin, u, K);
    Rational lead = 1;
    for (int i = 0; i < -k; ++i) lead /= s1;
    // t^k term of f(z) plus s^k term
    total[k - lo] += ck;
    for (int j = 0; k + j <= -1; ++j) total[k + j - lo] += ck * lead * pw[j];
  }
  for (int k = lo; k <= -1; ++k)
    if (total[k - lo] != 0)
      return Check::fail("f(z)+f(sigma(z)) has a pole of order " + std::to_string(-k) + " at z=" +
                         to_string(rp.location));
  return Check::pass();
}

ProbeSet make_probes(std::uint64_t seed, const std::vector<Sym>& vars, const std::vector<Rational>& avoid) {
  ProbeSet ps;
  ps.seed = seed;
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 13);
  std::set<Rational> used(avoid.begin(), avoid.end());
  for (Sym v : vars) {
    Rational q;
    do {
      q = Rational(num(gen), den(gen));
      q.canonicalize();
    } while (used.count(q) || q == 0);
    used.insert(q);
    ps.values[v] = q;
  }
  return ps;
}

namespace {

std::vector<Rational> special_points(const Curve& c) {
  std::vector<Rational> out{Rational(0), Rational(1), Rational(-1)};
  for (auto& rp : c.ramification_points(Side::X)) out.push_back(rp.location);
  if (c.dual_side_valid())
    for (auto& rp : c.ramification_points(Side::Y)) out.push_back(rp.location);
  return out;
}

// Bind the spectators of f (all variables except keep) to probe values; retries on degenerate probes.
template <class Fn>
Check over_probes(const Curve& c, const std::vector<Sym>& spectators, std::uint64_t seed, Fn&& fn) {
  auto avoid = special_points(c);
  for (int k = 0; k < kProbeSets; ++k) {
    Check r;
    bool done = false;
    for (int attempt = 0; attempt < 8 && !done; ++attempt) {
      auto ps = make_probes(seed + 1000003ull * k + attempt, spectators, avoid);
      try {
        r = fn(ps.values);
        done = true;
      } catch (const std::domain_error&) {
      }
    }
    if (!done) throw std::runtime_error("could not find generic probe values");
    if (!r) return r;
  }
  return Check::pass();
}

}  // namespace

Check check_linear_loop(const OmegaTable& t, int g, int m, const RamificationPoint& rp, std::uint64_t seed) {
  const Curve& c = t.curve();
  MRat body = t.get(g, m + 1, 0);
  const Sym Z = zvar(m + 1);
  std::vector<Sym> spect;
  for (int i = 1; i <= m; ++i) spect.push_back(zvar(i));
  return over_probes(c, spect, seed, [&](const std::map<Sym, Rational>& vals) {
    MRat f = spect.empty() ? body : body.subs_values(vals);
    std::vector<std::vector<LazySeries>> terms{
        {lazy_expand(f, {{Z, rp.location, identity_shift()}})},
        {lazy_expand(f, {{Z, rp.location, c.deck_shift(rp)}}), deck_derivative(c, rp)}};
    auto s = sum_of_products_through(terms, 0);
    for (int k = s.lo; k <= 0; ++k)
      if (!s.at(k).is_zero())
        return Check::fail("linear loop equation fails for " + describe({g, m, 0}, rp) + ": coefficient of t^" +
                           std::to_string(k) + " is " + s.at(k).str());
    return Check::pass();
  });
}

Check check_quadratic_loop(const OmegaTable& t, int g, int m, const RamificationPoint& rp, std::uint64_t seed) {
  const Curve& c = t.curve();
  const Sym Z = sym_z(), S = sym_s();
  std::vector<Sym> spect;
  for (int i = 1; i <= m; ++i) spect.push_back(zvar(i));
  std::vector<std::vector<MRat>> terms;
  if (g >= 1) {
    std::vector<Sym> vars = spect;
    vars.push_back(Z);
    vars.push_back(S);
    terms.push_back({place_body(t.get(g - 1, m + 2, 0), vars)});
  }
  for (int g1 = 0; g1 <= g; ++g1)
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<Sym> a, b;
      for (int i = 0; i < m; ++i) ((mask >> i) & 1u ? a : b).push_back(spect[i]);
      a.push_back(Z);
      b.push_back(S);
      terms.push_back({place_body(t.get(g1, static_cast<int>(a.size()), 0), a),
                       place_body(t.get(g - g1, static_cast<int>(b.size()), 0), b)});
    }
  auto pl = zs_placements(c, rp);
  return over_probes(c, spect, seed, [&](const std::map<Sym, Rational>& vals) {
    std::vector<std::vector<LazySeries>> lazy;
    for (auto& term : terms) {
      std::vector<LazySeries> fs;
      for (auto& f : term) fs.push_back(lazy_expand(spect.empty() ? f : f.subs_values(vals), pl));
      fs.push_back(deck_derivative(c, rp));
      lazy.push_back(std::move(fs));
    }
    auto s = sum_of_products_through(lazy, 1);
    for (int k = s.lo; k <= 1; ++k)
      if (!s.at(k).is_zero())
        return Check::fail("quadratic loop equation fails for " + describe({g, m, 0}, rp) + ": coefficient of t^" +
                           std::to_string(k) + " is " + s.at(k).str());
    return Check::pass();
  });
}

Check check_r_loop(const Curve& c, const MRat& wcal_coeff, Sym v, int r, const RamificationPoint& rp,
                   std::uint64_t seed) {
  std::vector<Sym> spect;
  for (Sym s : wcal_coeff.vars())
    if (s != v) spect.push_back(s);
  auto res = over_probes(c, spect, seed, [&](const std::map<Sym, Rational>& vals) {
    return xi_membership(c, spect.empty() ? wcal_coeff : wcal_coeff.subs_values(vals), v, rp);
  });
  if (!res) res.detail = std::to_string(r) + "-loop equation: " + res.detail;
  return res;
}

Check check_projection(const OmegaTable& t, int g, int m) {
  if (!is_stable(g, m, 0)) throw std::invalid_argument("projection property applies to stable entries only");
  const Curve& c = t.curve();
  const MRat& body = t.get(g, m, 0);
  const auto& rps = c.ramification_points(Side::X);
  // shortcut: poles only at ramification points, no polynomial part, zero residues
  for (int j = 1; j <= m; ++j) {
    Sym zj = zvar(j);
    MRat pp;
    for (auto& loc : pole_locations(body, zj)) {
      if (!loc.is_constant())
        return Check::fail("pole in z" + std::to_string(j) + " depends on other variables");
      Rational a = loc.constant_term();
      bool ram = false;
      for (auto& rp : rps) ram = ram || rp.location == a;
      if (!ram) return Check::fail("pole of z" + std::to_string(j) + " at z=" + to_string(a) + " is not a ramification point");
    }
    for (auto& rp : rps) {
      MRat part = principal_part(body, zj, MPoly(rp.location));
      auto ser = expand(part, {{zj, rp.location, identity_shift()}}, -1);
      if (!ser.at(-1).is_zero())
        return Check::fail("nonzero residue in z" + std::to_string(j) + " at z=" + to_string(rp.location));
      pp += part;
    }
    if (pp != body) return Check::fail("body is not the sum of its principal parts in z" + std::to_string(j));
  }
  // literal: apply the projection operator in each variable in turn
  const Sym Z = sym_z();
  MRat f = body;
  for (int j = 1; j <= m; ++j) {
    Sym zj = zvar(j);
    MRat fz = f.rename({{zj, Z}});
    MRat next;
    for (auto& rp : rps) {
      MRat kernel = (MRat::var(zj) - MRat::var(Z)).inverse() - (MRat::var(zj) - MRat(rp.location)).inverse();
      std::vector<Placement> pl{{Z, rp.location, identity_shift()}};
      auto s = product_through({lazy_expand(kernel, pl), lazy_expand(fz, pl)}, -1);
      next += s.at(-1);
    }
    f = next;
  }
  if (f != body) return Check::fail("projection operator does not reproduce the entry");
  return Check::pass();
}

bool exactness_check(const MRat& f, Sym z) {
  auto pf = partial_fractions(f, z);
  for (auto& [p, cs] : pf.parts)
    if (!cs.empty() && cs[0] != 0) return false;
  return true;
}

}  // namespace toprec
