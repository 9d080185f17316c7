// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "toprec/classical.hpp"
#include "toprec/special.hpp"
#include "toprec/swap.hpp"

using namespace toprec;

namespace {

MRat zc() { return MRat::var(curve_var()); }
Curve airy() { return Curve("airy", zc() * zc() * Rational(1, 2), zc()); }
Curve acc() { return Curve("acc", zc() + zc().inverse(), (zc() - MRat(3)) * (zc() - MRat(3))); }

// Collects failures of one criterion.
struct Report {
  std::vector<std::string> failures;
  int checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
  void expect(const Check& c, const std::string& what) { expect(c.ok, what + (c.ok ? "" : ": " + c.detail)); }
};

std::string tri(int g, int m, int n) {
  return "(" + std::to_string(g) + "," + std::to_string(m) + "," + std::to_string(n) + ")";
}

Rational factorial_q(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational double_factorial_q(int k) {  // (2k+1)!!
  Rational r = 1;
  for (int i = 3; i <= 2 * k + 1; i += 2) r *= i;
  return r;
}

std::vector<Triple> stable_triples(int chi_max) {
  std::vector<Triple> out;
  for (int g = 0; 2 * g - 1 <= chi_max; ++g)
    for (int m = 0; 2 * g - 2 + m <= chi_max; ++m)
      for (int n = 0; 2 * g - 2 + m + n <= chi_max; ++n)
        if (is_stable(g, m, n)) out.push_back({g, m, n});
  return out;
}

// ---------------------------------------------------------------- criterion 1 and 2 oracles

// <tau_{k1} ... tau_{km}>_g read off prod z_i^{-(2k_i+2)}; sum over all terms.
std::map<std::vector<int>, Rational> read_psi(const MRat& body, int g, int m) {
  return psi_extract(body, g, m).entries;
}

// sum_{i+k=g} (u1^3+u2^3)^i (u1+u2)^{k-1} (u1 u2)^k / (24^i i! 4^k (2k+1)!!)
MRat two_point_rhs(int g, const MRat& u1, const MRat& u2) {
  MRat out;
  for (int i = 0; i <= g; ++i) {
    int k = g - i;
    Rational c = Rational(1) / (factorial_q(i) * double_factorial_q(k));
    for (int j = 0; j < i; ++j) c /= 24;
    for (int j = 0; j < k; ++j) c /= 4;
    out += (u1.pow(3) + u2.pow(3)).pow(i) * (u1 + u2).pow(k - 1) * (u1 * u2).pow(k) * c;
  }
  return out;
}

// ---------------------------------------------------------------- worked-example helpers

struct Frame {
  const Curve& c;
  const OmegaTable& t;
  Sym s;  // the distinguished variable
  MRat x, y, X, Y;
  Frame(const Curve& c_, const OmegaTable& t_, Sym s_) : c(c_), t(t_), s(s_) {
    x = c.fn_at(Side::X, s);
    y = c.fn_at(Side::Y, s);
    X = x.diff(s);
    Y = y.diff(s);
  }
  // D_x and D_y on the coefficient of a 1-form in s
  MRat dx(const MRat& b, int k = 1) const {
    MRat r = b;
    for (int i = 0; i < k; ++i) r = (r / X).diff(s);
    return r;
  }
  MRat dy(const MRat& b, int k = 1) const {
    MRat r = b;
    for (int i = 0; i < k; ++i) r = (r / Y).diff(s);
    return r;
  }
  // omega^(g) with x-type arguments xs and y-type arguments ys (repetitions allowed)
  MRat w(int g, const std::vector<Sym>& xs, const std::vector<Sym>& ys) const {
    const int m = int(xs.size()), n = int(ys.size());
    if (g == 0 && m + n <= 2) {
      auto B = [](Sym a, Sym b) { return (MRat::var(a) - MRat::var(b)).pow(-2); };
      if (m == 1 && n == 0) return -(c.fn_at(Side::Y, xs[0]) * c.dfn_at(Side::X, xs[0]));
      if (m == 0 && n == 1) return -(c.fn_at(Side::X, ys[0]) * c.dfn_at(Side::Y, ys[0]));
      if (m == 2) return B(xs[0], xs[1]);
      if (n == 2) return B(ys[0], ys[1]);
      return -B(xs[0], ys[0]);
    }
    std::map<Sym, MRat> sub;
    for (int i = 0; i < m; ++i) sub[zvar(i + 1)] = MRat::var(xs[i]);
    for (int j = 0; j < n; ++j) sub[zvar(m + 1 + j)] = MRat::var(ys[j]);
    return t.get(g, m, n).subs(sub);
  }
  // omega^{(0),reg}_{(*,*)}: B minus the pullback of the flat kernel, on the diagonal,
  // equals -S(f)/6 with the Schwarzian S(f) = f'''/f' - (3/2)(f''/f')^2
  MRat reg_diag(Side side) const {
    MRat f1 = side == Side::X ? X : Y;
    MRat f2 = f1.diff(s), f3 = f2.diff(s);
    MRat schw = f3 / f1 - (f2 / f1).pow(2) * Rational(3, 2);
    return -schw * Rational(1, 6);
  }
};

// all set partitions of {0..k-1}
std::vector<std::vector<std::vector<int>>> set_partitions(int k) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = 0; j < cur.size(); ++j) {  // by index: rec may reallocate cur
      cur[j].push_back(i);
      rec(i + 1);
      cur[j].pop_back();
    }
    cur.push_back({i});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
  return out;
}

struct Arg {
  Sym v;
  bool bar;
};

// genus-zero relation for omega_{(bar*, K)} (dual == false) or omega_{(*, K)} (dual == true)
bool genus_zero_relation(const Frame& f, const std::vector<Arg>& K, bool dual) {
  auto split = [&](const std::vector<int>& idx, bool star_bar) {
    std::vector<Sym> xs, ys;
    (star_bar ? ys : xs).push_back(f.s);
    for (int i : idx) (K[i].bar ? ys : xs).push_back(K[i].v);
    return std::make_pair(xs, ys);
  };
  std::vector<int> all;
  for (int i = 0; i < int(K.size()); ++i) all.push_back(i);
  auto [lx, ly] = split(all, !dual);
  MRat lhs = f.w(0, lx, ly);
  MRat rhs;
  for (auto& part : set_partitions(int(K.size()))) {
    MRat prod(1);
    for (auto& block : part) {
      auto [bx, by] = split(block, dual);
      prod *= f.w(0, bx, by);
    }
    int k = int(part.size()) - 1;
    if (!dual)
      rhs -= f.dy(prod / f.X.pow(k), k);
    else
      rhs -= f.dx(prod / f.Y.pow(k), k);
  }
  return lhs == rhs;
}

// (g, m+n+1) = (1,1), both dual forms
bool relation_11(const Frame& f, bool dual) {
  MRat sum = f.w(1, {}, {f.s}) + f.w(1, {f.s}, {});
  if (!dual)
    return sum + f.dy(f.reg_diag(Side::X) / (f.X * Rational(2))) + f.dy(f.dx(f.w(0, {f.s}, {}), 2), 2) * Rational(1, 24) ==
           MRat();
  return sum + f.dx(f.reg_diag(Side::Y) / (f.Y * Rational(2))) + f.dx(f.dy(f.w(0, {}, {f.s}), 2), 2) * Rational(1, 24) ==
         MRat();
}

// (g, m+n+1) = (1,2) with the spectator a either x-type or y-type. literal == true puts
// D_x^2 omega^(0)_(*) / 24 in the D_y^2 bracket, false puts D_x^2 omega^(0)_(a,*) / 24 there.
bool relation_12(const Frame& f, Sym a, bool a_bar, bool literal) {
  auto W = [&](int g, std::vector<Sym> xs, std::vector<Sym> ys) {
    (a_bar ? ys : xs).push_back(a);
    return f.w(g, xs, ys);
  };
  MRat lhs = W(1, {}, {f.s}) + W(1, {f.s}, {});
  MRat w0a = W(0, {f.s}, {});
  MRat w1s = f.w(1, {f.s}, {});
  MRat w0s = f.w(0, {f.s}, {});
  MRat reg = f.reg_diag(Side::X);
  MRat t1 = (W(0, {f.s, f.s}, {}) * Rational(1, 2) + w0a * w1s) / f.X;
  MRat t2 = (literal ? f.dx(w0s, 2) : f.dx(w0a, 2)) * Rational(1, 24) + w0a * reg / (f.X.pow(2) * Rational(2));
  MRat t3 = w0a * f.dx(w0s, 2) / (f.X * Rational(24));
  return lhs + f.dy(t1) + f.dy(t2, 2) + f.dy(t3, 3) == MRat();
}

// (g, m+n+1) = (2,1), both dual forms
bool relation_21(const Frame& f, bool dual) {
  const Side side = dual ? Side::Y : Side::X;
  auto Dp = [&](const MRat& b, int k) { return dual ? f.dy(b, k) : f.dx(b, k); };  // D_x for the direct form
  auto Dq = [&](const MRat& b, int k) { return dual ? f.dx(b, k) : f.dy(b, k); };  // D_y for the direct form
  const MRat& P = dual ? f.Y : f.X;                                                 // dx for the direct form
  auto one = [&](int g, std::vector<Sym> v) { return dual ? f.w(g, {}, v) : f.w(g, v, {}); };
  Sym a = intern("acc_a1");
  MRat A = one(1, {f.s});
  MRat Bq = Dp(one(0, {f.s}), 2) * Rational(1, 24);
  MRat C = f.reg_diag(side) / (P * Rational(2));
  // D_x^2 acting on omega^{(0),reg}_{(*,1)} in *, then z1 -> *
  MRat regs1 = (MRat::var(f.s) - MRat::var(a)).pow(-2) -
               f.c.dfn_at(side, f.s) * f.c.dfn_at(side, a) / (f.c.fn_at(side, f.s) - f.c.fn_at(side, a)).pow(2);
  MRat lim = restrict_diagonal(Dp(regs1, 2), {f.s, a}, f.s);
  std::vector<MRat> coef(6);
  coef[1] = one(1, {f.s, f.s}) / (P * Rational(2)) + A * A / (P * Rational(2));
  coef[2] = Dp(A, 2) * Rational(1, 24) + one(0, {f.s, f.s, f.s}) / (P.pow(2) * Rational(6)) + A * C / P;
  coef[3] = lim / (P * Rational(24)) + (C * C + A * Bq * Rational(2)) / (P * Rational(2));
  coef[4] = Dp(one(0, {f.s}), 4) * Rational(1, 1920) + Bq * C / P;
  coef[5] = Bq * Bq / (P * Rational(2));
  MRat rhs;
  for (int r = 0; r < 6; ++r)
    if (!coef[r].is_zero()) rhs -= Dq(coef[r], r);
  return f.w(2, {}, {f.s}) + f.w(2, {f.s}, {}) == rhs;
}

// ---------------------------------------------------------------- criteria

Report criterion1() {
  Report r;
  Curve c = airy();
  OmegaTable t = tr_run(c, 5);
  for (int g = 1; g <= 3; ++g) {
    Rational expect = Rational(1) / factorial_q(g);
    for (int i = 0; i < g; ++i) expect /= 24;
    auto a = read_psi(t.get(g, 1, 0), g, 1);
    auto b = read_psi(yz_closed_formula(c.x(), g, 1).body, g, 1);
    r.expect(a.size() == 1 && a[{3 * g - 2}] == expect, "residue recursion one-point g=" + std::to_string(g));
    r.expect(b.size() == 1 && b[{3 * g - 2}] == expect, "closed formula one-point g=" + std::to_string(g));
  }
  return r;
}

Report criterion2() {
  Report r;
  OmegaTable t(airy());
  MRat u1 = MRat::var(intern("acc_u1")), u2 = MRat::var(intern("acc_u2"));
  for (int g = 1; g <= 3; ++g) {
    MRat lhs;
    for (auto& [k, v] : read_psi(t.get(g, 2, 0), g, 2)) lhs += u1.pow(k[0]) * u2.pow(k[1]) * v;
    r.expect(lhs == two_point_rhs(g, u1, u2), "two-point identity g=" + std::to_string(g));
  }
  // (D1 + D2)^{k+1} (z1-z2)^{-2k-2} = (2k+1)!! (z1 z2)^{-2k-2} = (D1 D2)^{k+1} 1 / (2k+1)!!, D = D_{-x}
  Sym a = zvar(1), b = zvar(2);
  auto D = [](const MRat& f, Sym v) { return -((f / MRat::var(v)).diff(v)); };
  for (int k = 0; k <= 3; ++k) {
    MRat f = (MRat::var(a) - MRat::var(b)).pow(-2 * k - 2);
    MRat h(1);
    for (int i = 0; i <= k; ++i) {
      f = D(f, a) + D(f, b);
      h = D(D(h, a), b);
    }
    MRat mid = (MRat::var(a) * MRat::var(b)).pow(-2 * k - 2) * double_factorial_q(k);
    r.expect(f == mid && h * (Rational(1) / double_factorial_q(k)) == mid, "diagonal identity k=" + std::to_string(k));
  }
  return r;
}

Report criterion3() {
  Report r;
  Curve c = acc();
  OmegaTable t = tr_run(c, 3);
  OmegaTable s(c.swapped());
  for (auto [g, n] : std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {0, 4}, {1, 2}, {2, 1}})
    r.expect(graph_sum_swap(t, g, n).body == s.get(g, n, 0), "swap " + tri(g, 0, n));
  return r;
}

Report criterion4() {
  Report r;
  for (const Curve& c : {airy(), acc()}) {
    OmegaTable t(c);
    for (const Triple& k : stable_triples(2)) {
      if (k.n >= 1) {
        MRat a = step_simple(t, Direction::XtoY, k.g, k.m, k.n - 1).body;
        r.expect(a == step_standard(t, Direction::XtoY, k.g, k.m, k.n - 1).body,
                 c.name() + " x->y simple vs standard " + k.str());
        r.expect(graph_sum_mixed(t, k.g, k.m, k.n).body == t.get(k.g, k.m, k.n),
                 c.name() + " graph sum vs iterated steps " + k.str());
      }
      if (k.m >= 1)
        r.expect(step_simple(t, Direction::YtoX, k.g, k.m - 1, k.n).body ==
                     step_standard(t, Direction::YtoX, k.g, k.m - 1, k.n).body,
                 c.name() + " y->x simple vs standard " + k.str());
    }
  }
  return r;
}

Report criterion5() {
  Report r;
  for (const Curve& c : {airy(), acc()}) {
    OmegaTable t(c);
    for (const Triple& k : stable_triples(2))
      for (int rr = 1; rr <= 3; ++rr) {
        if (k.m >= 1)
          r.expect(check_loop_equations(t, Side::X, k.g, k.m - 1, k.n, rr),
                   c.name() + " x-side r=" + std::to_string(rr) + " " + k.str());
        if (k.n >= 1)
          r.expect(check_loop_equations(t, Side::Y, k.g, k.m, k.n - 1, rr),
                   c.name() + " y-side r=" + std::to_string(rr) + " " + k.str());
      }
  }
  // injected corruption must be caught on both sides
  Curve c = acc();
  OmegaTable good(c), bad(c, ColumnSource::Given);
  MRat z1 = MRat::var(zvar(1));
  bad.put(1, 1, 0, good.get(1, 1, 0) + (z1 - MRat(1)).pow(-3));
  bad.put(1, 0, 1, good.get(1, 0, 1) + (z1 - MRat(3)).pow(-3));
  for (int rr = 1; rr <= 3; ++rr) {
    r.expect(!check_loop_equations(bad, Side::X, 1, 0, 0, rr).ok, "x-side corruption caught r=" + std::to_string(rr));
    r.expect(!check_loop_equations(bad, Side::Y, 1, 0, 0, rr).ok, "y-side corruption caught r=" + std::to_string(rr));
  }
  return r;
}

Report criterion6() {
  Report r;
  for (const Curve& c : {airy(), acc()}) {
    OmegaTable t(c);
    for (const Triple& k : stable_triples(2)) {
      r.expect(check_diagonal_regularity(t, k.g, k.m, k.n), c.name() + " diagonal " + k.str());
      r.expect(check_pole_classification(t, k.g, k.m, k.n), c.name() + " poles " + k.str());
    }
  }
  OmegaTable bad(acc(), ColumnSource::Given);
  MRat z1 = MRat::var(zvar(1)), z2 = MRat::var(zvar(2)), z3 = MRat::var(zvar(3));
  bad.put(0, 3, 0, (z1 - z2).pow(-2) * (z3 - MRat(1)).pow(-2));
  r.expect(!check_diagonal_regularity(bad, 0, 3, 0).ok, "within-block diagonal pole caught");
  bad.put(0, 2, 1, ((z1 - MRat(1)) * (z2 - MRat(1)) * (z3 - MRat(1))).pow(-2));
  r.expect(!check_pole_classification(bad, 0, 2, 1).ok, "y-block pole at a zero of dx caught");
  return r;
}

Report criterion7() {
  Report r;
  OmegaTable t = tr_run(airy(), 3);
  for (auto [g, n] : std::vector<std::pair<int, int>>{{1, 1}, {0, 3}, {1, 2}})
    r.expect(graph_sum_swap(t, g, n).body.is_zero(), "dual Airy " + tri(g, 0, n));
  return r;
}

Report criterion8() {
  Report r;
  for (const Curve& c : {airy(), acc()}) {
    OmegaTable ref = tr_run(c, 1);
    // an empty table: only the unstable conventions are available, so no residue is taken
    OmegaTable none(c, ColumnSource::Given);
    r.expect(split_poles(split_rhs(none, 1, 0, 0), c, 0, 0).first == ref.get(1, 1, 0), c.name() + " omega^(1)_{1,0}");
    r.expect(split_poles(split_rhs(none, 0, 2, 0), c, 2, 0).first == ref.get(0, 3, 0), c.name() + " omega^(0)_{3,0}");
  }
  return r;
}

Report criterion9() {
  Report r;
  Sym s = intern("acc_s");
  std::vector<Sym> a{intern("acc_a1"), intern("acc_a2"), intern("acc_a3"), intern("acc_a4")};
  for (const Curve& c : {airy(), acc()}) {
    OmegaTable t(c);
    Frame f(c, t, s);
    const std::string nm = c.name() + " ";
    // genus zero, three and four points, in both directions
    const std::vector<std::vector<Arg>> ks{
        {{a[0], false}, {a[1], false}},
        {{a[0], false}, {a[2], true}},
        {{a[0], true}, {a[2], true}},
        {{a[0], false}, {a[1], false}, {a[2], false}},
        {{a[0], false}, {a[1], false}, {a[3], true}},
        {{a[0], false}, {a[2], true}, {a[3], true}},
        {{a[1], true}, {a[2], true}, {a[3], true}},
    };
    for (std::size_t i = 0; i < ks.size(); ++i) {
      r.expect(genus_zero_relation(f, ks[i], false), nm + "genus zero relation #" + std::to_string(i));
      r.expect(genus_zero_relation(f, ks[i], true), nm + "dual genus zero relation #" + std::to_string(i));
    }
    r.expect(relation_11(f, false), nm + "(1,1) relation");
    r.expect(relation_11(f, true), nm + "dual (1,1) relation");
    r.expect(relation_12(f, a[0], false, false), nm + "(1,2) relation, x-type spectator");
    r.expect(relation_12(f, a[1], true, false), nm + "(1,2) relation, y-type spectator");
    // the spectator-free variant of the D_y^2 term is not an identity
    r.expect(!relation_12(f, a[0], false, true), nm + "(1,2) relation without spectator in the D_y^2 term fails");
    r.expect(relation_21(f, false), nm + "(2,1) relation");
    r.expect(relation_21(f, true), nm + "dual (2,1) relation");
  }
  return r;
}

Report criterion10() {
  Report r;
  Sym v = curve_var();
  for (auto fam : {WeightFamily::WittenR, WeightFamily::Hypermap, WeightFamily::Theta})
    for (int rr : {2, 3}) {
      FamilyParams p{fam, rr, Rational(1), Rational(1)};
      PSeries diff = vertex_weight(family_x(p, v), v, 4) - vertex_weight_closed(p, v, 4);
      r.expect(diff.is_zero(), "family " + std::to_string(int(fam)) + " r=" + std::to_string(rr));
    }
  return r;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* name;
    std::function<Report()> run;
  };
  const std::vector<Item> items{
      {1, "Witten-Kontsevich one-point numbers", criterion1},
      {2, "two-point generating identity and diagonal identity", criterion2},
      {3, "x-y swap end to end on the acceptance curve", criterion3},
      {4, "equivalence of the recursion forms", criterion4},
      {5, "loop equations on both sides", criterion5},
      {6, "diagonal regularity and pole classification", criterion6},
      {7, "triviality of the dual Airy side", criterion7},
      {8, "pole splitting", criterion8},
      {9, "worked low-order relations", criterion9},
      {10, "closed-form vertex weights", criterion10},
  };
  int failed = 0;
  for (auto& it : items) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    try {
      rep = it.run();
    } catch (const std::exception& e) {
      rep.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = rep.failures.empty() && rep.checks > 0;
    failed += ok ? 0 : 1;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << it.id << ": " << it.name << " (" << rep.checks << " checks, ";
    line.precision(2);
    line << std::fixed << secs << " s)";
    std::cout << line.str() << std::endl;
    for (auto& f : rep.failures) std::cout << "    failed: " << f << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
