#include "toprec/special.hpp"

#include <functional>
#include <numeric>
#include <sstream>

#include "toprec/series.hpp"

namespace toprec {

namespace {

Rational inv_factorial(int n) { return Rational(Integer(1), Integer(factorial(n))); }

PKey key1(int h, int e) { return PKey{h, {e}}; }

PKey keyn(int np, int h, std::initializer_list<std::pair<int, int>> exps) {
  PKey k{h, std::vector<int>(np, 0)};
  for (auto [p, e] : exps) k.w[p] += e;
  return k;
}

// -(1/w) exp(E)
PSeries close_vertex(const PSeries& expo, int cutoff) {
  return expo.exp() * PSeries::monomial(1, cutoff, key1(0, -1), MRat(-1));
}

// hbar exponent -(2/(hbar n)) sum_{odd j>=3} C(n,j) (w hbar/2)^j z^{n-j}, n >= 1
void add_odd_binomial_terms(PSeries& e, const Rational& n, const MRat& zpow_base, const MRat& z, int cutoff,
                            const Rational& scale) {
  for (int j = 3; j - 1 <= cutoff; j += 2) {
    Rational c = binomial(n, j) * scale;
    if (c == 0) continue;
    for (int i = 0; i < j; ++i) c /= 2;
    e.add(key1(j - 1, j), zpow_base * z.pow(-j) * c);
  }
}

}  // namespace

PSeries vertex_weight(const MRat& x_of_v, Sym v, int cutoff) {
  auto s = s_series(cutoff + 2);
  PSeries e(1, cutoff);
  MRat d = x_of_v;
  for (int a = 1; 2 * a <= cutoff; ++a) {
    d = d.diff(v).diff(v);
    if (d.is_zero()) break;
    e.add(key1(2 * a, 2 * a + 1), -d * s[2 * a]);
  }
  return close_vertex(e, cutoff);
}

MRat family_x(const FamilyParams& p, Sym v) {
  MRat z = MRat::var(v);
  switch (p.family) {
    case WeightFamily::WittenR:
      return z.pow(p.r) - z * (p.eps * p.r);
    case WeightFamily::Hypermap:
      return z.pow(p.r - 1) + z.inverse();
    case WeightFamily::Theta: {
      Rational lr = 1;
      for (int i = 0; i < p.r - 1; ++i) lr *= p.lambda;
      return z.pow(-p.r) - z.inverse() * (lr * p.r);
    }
  }
  throw std::logic_error("unknown family");
}

PSeries vertex_weight_closed(const FamilyParams& p, Sym v, int cutoff) {
  MRat z = MRat::var(v);
  PSeries e(1, cutoff);
  // log((1-b)/(1+b)) + 2b = -2 sum_{k>=1} b^{2k+1}/(2k+1), b = w hbar/(2z); over hbar
  auto log_ratio = [&](const Rational& mult) {
    for (int k = 1; 2 * k <= cutoff; ++k) {
      Rational c = Rational(-2) / (2 * k + 1) * mult;
      for (int i = 0; i < 2 * k + 1; ++i) c /= 2;
      e.add(key1(2 * k, 2 * k + 1), z.pow(-(2 * k + 1)) * c);
    }
  };
  switch (p.family) {
    case WeightFamily::WittenR: {
      // ((z-a)^{r+1} - (z+a)^{r+1} + (r+1) w hbar z^r) / (hbar (r+1)), a = w hbar/2
      Rational n = p.r + 1;
      add_odd_binomial_terms(e, n, z.pow(p.r + 1), z, cutoff, Rational(-2) / n);
      break;
    }
    case WeightFamily::Hypermap: {
      log_ratio(Rational(1));
      Rational n = p.r;
      add_odd_binomial_terms(e, n, z.pow(p.r), z, cutoff, Rational(-2) / n);
      break;
    }
    case WeightFamily::Theta: {
      Rational lr = 1;
      for (int i = 0; i < p.r - 1; ++i) lr *= p.lambda;
      log_ratio(-lr * p.r);
      // ((1+b)^{1-r} - (1-b)^{1-r} + (r-1) w hbar/z) / (hbar (r-1) z^{r-1})
      //   = 2/(hbar (r-1) z^{r-1}) sum_{odd j>=3} C(1-r,j) b^j
      Rational n = 1 - p.r;
      for (int j = 3; j - 1 <= cutoff; j += 2) {
        Rational c = binomial(n, j) * 2 / (p.r - 1);
        for (int i = 0; i < j; ++i) c /= 2;
        if (c != 0) e.add(key1(j - 1, j), z.pow(-j - (p.r - 1)) * c);
      }
      break;
    }
  }
  return close_vertex(e, cutoff);
}

PSeries edge_weight(Sym zi, Sym zj, int pi, int pj, int np, int cutoff) {
  MRat d = MRat::var(zi) - MRat::var(zj);
  MRat inv_d2 = (d * d).inverse();
  PSeries out(np, cutoff);
  // w_i w_j / d^2 * sum_k (hbar^2 (w_i + w_j)^2 / (4 d^2))^k
  for (int k = 0; 2 * k <= cutoff; ++k) {
    // (w_i + w_j)^{2k} binomial expansion
    for (int a = 0; a <= 2 * k; ++a) {
      Rational c = binomial(Rational(2 * k), a);
      for (int i = 0; i < k; ++i) c /= 4;
      out.add(keyn(np, 2 * k, {{pi, 1 + a}, {pj, 1 + 2 * k - a}}), inv_d2.pow(k + 1) * c);
    }
  }
  return out;
}

PSeries edge_weight_exponential(Sym zi, Sym zj, int pi, int pj, int np, int cutoff) {
  auto s = s_series(cutoff + 4);
  MRat d = MRat::var(zi) - MRat::var(zj);
  MRat base = (d * d).inverse();
  PSeries A(np, cutoff + 2);
  for (int a = 0; 2 + 2 * a <= cutoff + 2; ++a) {
    MRat da = base;
    for (int i = 0; i < 2 * a; ++i) da = da.diff(zi);
    for (int b = 0; 2 + 2 * a + 2 * b <= cutoff + 2; ++b) {
      MRat dab = da;
      for (int i = 0; i < 2 * b; ++i) dab = dab.diff(zj);
      A.add(keyn(np, 2 + 2 * a + 2 * b, {{pi, 1 + 2 * a}, {pj, 1 + 2 * b}}), dab * (s[2 * a] * s[2 * b]));
    }
  }
  PSeries e = A.exp();
  PSeries out(np, cutoff);
  for (auto& [k, v] : e.terms()) {
    if (k.h == 0) continue;  // the constant 1
    PKey kk = k;
    kk.h -= 2;
    out.add(kk, v);
  }
  return out;
}

CorrDiff yz_closed_formula(const MRat& x_of_z, int g, int m) {
  if (m < 1) throw std::invalid_argument("yz_closed_formula: m >= 1");
  const Sym zc = curve_var();
  // connected simple graphs on m vertices
  std::vector<std::pair<int, int>> all_edges;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) all_edges.emplace_back(i, j);
  std::vector<MRat> xs, dxs;
  for (int i = 1; i <= m; ++i) {
    xs.push_back(x_of_z.rename({{zc, zvar(i)}}));
    dxs.push_back(xs.back().diff(zvar(i)));
  }
  MRat total;
  const std::size_t E = all_edges.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << E); ++mask) {
    int ne = 0;
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (std::size_t e = 0; e < E; ++e)
      if (mask >> e & 1u) {
        ++ne;
        parent[find(all_edges[e].first)] = find(all_edges[e].second);
      }
    bool conn = true;
    for (int i = 1; i < m; ++i) conn = conn && find(i) == find(0);
    if (!conn) continue;
    int betti = ne - m + 1;
    if (betti > g) continue;
    const int H = 2 * (g - betti);
    PSeries prod = PSeries::constant(m, H, MRat(1));
    for (int i = 0; i < m; ++i) prod = prod * vertex_weight(xs[i], zvar(i + 1), H).embed(m, {i});
    for (std::size_t e = 0; e < E; ++e)
      if (mask >> e & 1u) {
        auto [a, b] = all_edges[e];
        prod = prod * edge_weight(zvar(a + 1), zvar(b + 1), a, b, m, H);
      }
    PSeries slice = prod.hbar_slice(H);
    for (auto& [k, v] : slice.terms()) {
      bool neg = false;
      for (int r : k.w) neg = neg || r < 0;
      if (neg) continue;
      MRat f = v;
      for (int i = 0; i < m; ++i)
        for (int r = 0; r < k.w[i]; ++r) f = (f / dxs[i]).diff(zvar(i + 1));
      total += f;
    }
  }
  return {g, m, 0, total};
}

std::string PsiTable::to_json() const {
  std::ostringstream os;
  os << "{\"g\": " << g << ", \"entries\": [";
  bool first = true;
  for (auto& [k, v] : entries) {
    if (!first) os << ", ";
    first = false;
    os << "{\"k\": [";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? ", " : "") << k[i];
    os << "], \"value\": \"" << to_string(v) << "\"}";
  }
  os << "]}";
  return os.str();
}

PsiTable psi_extract(const MRat& body, int g, int m) {
  PsiTable t;
  t.g = g;
  t.m = m;
  // denominator must be a monomial in z1..zm
  std::vector<int> den_exp(m, 0);
  for (auto& [id, e] : body.den_factors()) {
    const auto& fi = factor_info(id);
    bool ok = false;
    for (int i = 1; i <= m; ++i)
      if (fi.poly == MPoly::var(zvar(i))) {
        den_exp[i - 1] += e;
        ok = true;
      }
    if (!ok) throw std::domain_error("psi_extract: denominator factor " + fi.poly.str() + " is not a coordinate");
  }
  const int dim = 3 * g - 3 + m;
  for (auto& [mono, c] : body.num().terms()) {
    std::vector<int> k(m);
    int sum = 0;
    Rational val = c;
    for (int i = 1; i <= m; ++i) {
      int e = mono.exp(zvar(i));
      int pw = den_exp[i - 1] - e;  // z_i^{-pw}
      if (pw < 2 || pw % 2 != 0)
        throw std::domain_error("psi_extract: term with z" + std::to_string(i) + "^" + std::to_string(-pw) +
                                " is not of the form z^{-2k-2}");
      k[i - 1] = pw / 2 - 1;
      sum += k[i - 1];
      val /= Rational(double_factorial_odd(k[i - 1]));
    }
    for (int j = 0; j < mono.n; ++j) {
      bool known = false;
      for (int i = 1; i <= m; ++i) known = known || mono.v[j] == zvar(i);
      if (!known) throw std::domain_error("psi_extract: unexpected variable " + symbol_name(mono.v[j]));
    }
    if (sum != dim) throw std::domain_error("psi_extract: term violates the dimension constraint");
    t.entries[k] += val;
  }
  return t;
}

bool WkReport::all_pass() const {
  for (auto& [n, ok] : items)
    if (!ok) return false;
  return true;
}

namespace {
// D f = -(f / z)' in variable v
MRat dmx(const MRat& f, Sym v) { return -((f / MRat::var(v)).diff(v)); }
}  // namespace

bool identity_2k(int k) {
  Sym a = zvar(1), b = zvar(2);
  MRat d = MRat::var(a) - MRat::var(b);
  MRat f = d.pow(-2 * k - 2);
  for (int i = 0; i <= k; ++i) f = dmx(f, a) + dmx(f, b);
  Rational df(double_factorial_odd(k));
  MRat prod = (MRat::var(a) * MRat::var(b)).pow(-2 * k - 2);
  MRat rhs1 = prod * df;
  MRat g(1);
  for (int i = 0; i <= k; ++i) g = dmx(dmx(g, a), b);
  MRat rhs2 = g * (Rational(1) / df);
  return f == rhs1 && rhs1 == rhs2;
}

MRat dijkgraaf_rhs(int g, Sym u1, Sym u2) {
  MRat a = MRat::var(u1), b = MRat::var(u2);
  MRat out;
  for (int i = 0; i <= g; ++i) {
    int k = g - i;
    Rational c = inv_factorial(i) / Rational(double_factorial_odd(k));
    for (int j = 0; j < i; ++j) c /= 24;
    for (int j = 0; j < k; ++j) c /= 4;
    out += (a.pow(3) + b.pow(3)).pow(i) * (a + b).pow(k - 1) * (a * b).pow(k) * c;
  }
  return out;
}

WkReport wk_identities(const OmegaTable& airy, int g_max) {
  WkReport rep;
  for (int g = 1; g <= g_max; ++g) {
    auto p = psi_extract(airy.get(g, 1, 0), g, 1);
    Rational expect = inv_factorial(g);
    for (int i = 0; i < g; ++i) expect /= 24;
    rep.items.emplace_back("one-point g=" + std::to_string(g), p.entries[{3 * g - 2}] == expect);
  }
  Sym u1 = intern("u1"), u2 = intern("u2");
  for (int g = 1; g <= g_max; ++g) {
    auto p = psi_extract(airy.get(g, 2, 0), g, 2);
    MRat lhs;
    for (auto& [k, v] : p.entries) lhs += MRat::var(u1).pow(k[0]) * MRat::var(u2).pow(k[1]) * v;
    rep.items.emplace_back("two-point g=" + std::to_string(g), lhs == dijkgraaf_rhs(g, u1, u2));
  }
  for (int k = 0; k <= g_max; ++k) rep.items.emplace_back("diagonal identity k=" + std::to_string(k), identity_2k(k));
  return rep;
}

}  // namespace toprec
