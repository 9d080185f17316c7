#include "toprec/series.hpp"

#include <stdexcept>

namespace toprec {

namespace {

std::vector<Rational> mul_trunc(const std::vector<Rational>& a, const std::vector<Rational>& b, int K) {
  std::vector<Rational> r(K + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= K; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= K; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

}  // namespace

Laurent<Rational> series_at(const UPoly& num, const UPoly& den, const Rational& p, int hi) {
  if (den.is_zero()) throw std::domain_error("series_at: zero denominator");
  UPoly n = num.shift(p), d = den.shift(p);
  int vd = 0;
  while (d[vd] == 0) ++vd;
  int vn = 0;
  if (n.is_zero()) return Laurent<Rational>::zero(hi);
  while (n[vn] == 0) ++vn;
  int lo = vn - vd;
  Laurent<Rational> r;
  r.lo = lo;
  r.hi = hi;
  if (hi < lo) return Laurent<Rational>::zero(hi);
  int len = hi - lo + 1;
  // E = t^vd / d
  std::vector<Rational> e(len, Rational(0));
  Rational d0inv = Rational(1) / d[vd];
  for (int k = 0; k < len; ++k) {
    Rational s = (k == 0) ? Rational(1) : Rational(0);
    for (int j = 1; j <= k; ++j) s -= d[vd + j] * e[k - j];
    e[k] = s * d0inv;
  }
  for (int k = 0; k < len; ++k) {
    Rational s = 0;
    for (int i = 0; i <= k; ++i) s += n[vn + i] * e[k - i];
    r.c.push_back(s);
  }
  return r;
}

LaurentData taylor_at(const MRat& f, Sym z, const Rational& p, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("taylor_at: window inverted");
  for (Sym s : f.vars())
    if (s != z) throw std::invalid_argument("taylor_at: function is not univariate in " + symbol_name(z));
  UPoly num = UPoly::from_mpoly(f.num(), z), den = UPoly::from_mpoly(f.den(), z);
  auto s = series_at(num, den, p, hi);
  LaurentData out;
  out.point = p;
  out.min_order = lo;
  out.max_order = hi;
  for (int k = lo; k <= hi; ++k) out.coeffs.push_back(k < s.lo ? Rational(0) : s.at(k));
  return out;
}

std::vector<Rational> s_series(int K) {
  if (K < 0) throw std::invalid_argument("s_series: negative order");
  std::vector<Rational> c(K + 1, Rational(0));
  for (int k = 0; 2 * k <= K; ++k) {
    Integer d = factorial(2 * k + 1);
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), 2 * k);
    c[2 * k] = Rational(Integer(1), d);
  }
  return c;
}

std::vector<Rational> compose(const std::vector<Rational>& f, const std::vector<Rational>& s, int K) {
  if (!s.empty() && s[0] != 0) throw std::invalid_argument("compose: inner series must vanish at 0");
  std::vector<Rational> r(K + 1, Rational(0));
  for (std::size_t k = f.size(); k-- > 0;) {
    r = mul_trunc(r, s, K);
    r[0] += f[k];
  }
  return r;
}

ShiftFn identity_shift() {
  return [](int K) {
    std::vector<Rational> c(std::max(K, 1) + 1, Rational(0));
    c[1] = 1;
    return c;
  };
}

ShiftFn exact_shift(std::vector<Rational> coeffs) {
  return [coeffs](int K) {
    std::vector<Rational> c(std::max<int>(K + 1, static_cast<int>(coeffs.size())), Rational(0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
    return c;
  };
}

Sym series_var() {
  static Sym t = intern("__t");
  return t;
}

namespace {

MPoly truncate_t(const MPoly& p, Sym t, int M) {
  std::vector<MPoly::Term> out;
  for (auto& term : p.terms())
    if (term.first.exp(t) <= M) out.push_back(term);
  return MPoly::from_terms(std::move(out));
}

// p with every placement applied, t-degree truncated at M.
MPoly image(const MPoly& p, const std::vector<Placement>& pl, const std::vector<MPoly>& vals, int M) {
  Sym t = series_var();
  MPoly r = p;
  for (std::size_t i = 0; i < pl.size(); ++i) {
    if (!r.has_var(pl[i].var)) continue;
    auto a = r.coeffs_in(pl[i].var);
    MPoly acc;
    for (std::size_t k = a.size(); k-- > 0;) {
      acc = truncate_t(acc * vals[i], t, M);
      acc += a[k];
    }
    r = std::move(acc);
  }
  return r;
}

}  // namespace

namespace {

struct Images {
  std::vector<MPoly> nc, dc;
  int vn = 0, vd = 0;
  bool ok = false;
};

Images images(const MRat& f, const MPoly& den_poly, const std::vector<Placement>& pl, int M) {
  Sym t = series_var();
  std::vector<MPoly> vals;
  for (auto& p : pl) {
    auto s = p.shift(M);
    std::vector<MPoly::Term> terms;
    terms.emplace_back(Monomial{}, p.point);
    for (int k = 1; k <= M && k < static_cast<int>(s.size()); ++k)
      if (s[k] != 0) terms.emplace_back(Monomial::of(t, k), s[k]);
    vals.push_back(MPoly::from_terms(std::move(terms)));
  }
  Images im;
  im.nc = image(f.num(), pl, vals, M).coeffs_in(t);
  im.dc = image(den_poly, pl, vals, M).coeffs_in(t);
  im.nc.resize(M + 1);
  im.dc.resize(M + 1);
  while (im.vn <= M && im.nc[im.vn].is_zero()) ++im.vn;
  while (im.vd <= M && im.dc[im.vd].is_zero()) ++im.vd;
  im.ok = im.vn <= M && im.vd <= M;
  return im;
}

void split_den(const MRat& f, const std::vector<Placement>& pl, FactorList& fixed, FactorList& moving) {
  auto placed = [&](FactorId id) {
    auto& fv = factor_info(id).vars;
    for (auto& p : pl)
      if (std::find(fv.begin(), fv.end(), p.var) != fv.end()) return true;
    return false;
  };
  for (auto& fe : f.den_factors()) (placed(fe.first) ? moving : fixed).push_back(fe);
}

constexpr int kExpandAttempts = 12;

}  // namespace

int expand_valuation(const MRat& f, const std::vector<Placement>& pl) {
  if (f.is_zero()) throw std::domain_error("expand_valuation: zero function has no valuation");
  FactorList fixed, moving;
  split_den(f, pl, fixed, moving);
  MPoly den_poly = expand_factors(moving);
  int M = 4;
  for (int attempt = 0; attempt < kExpandAttempts; ++attempt, M = 2 * M + 4) {
    auto im = images(f, den_poly, pl, M);
    if (im.ok) return im.vn - im.vd;
  }
  throw std::runtime_error("expand_valuation: hard cap reached");
}

Laurent<MRat> expand(const MRat& f, const std::vector<Placement>& pl, int N) {
  if (f.is_zero()) return Laurent<MRat>::zero(N);
  FactorList fixed, moving;
  split_den(f, pl, fixed, moving);
  MRat fixed_inv = MRat::from_factored(MPoly(1), fixed);
  MPoly den_poly = expand_factors(moving);

  int M = std::max(N, 0) + 8;
  for (int attempt = 0; attempt < kExpandAttempts; ++attempt, M = 2 * M + 4) {
    auto im = images(f, den_poly, pl, M);
    if (!im.ok) continue;
    int vn = im.vn, vd = im.vd;
    auto& nc = im.nc;
    auto& dc = im.dc;
    // num valid through M, 1/den through M - 2vd; product through min(M - vd, M - 2vd + vn)
    int valid = std::min(M - vd, M - 2 * vd + vn);
    if (valid < N) continue;
    int lo = vn - vd;
    Laurent<MRat> r;
    r.lo = lo;
    r.hi = N;
    if (N < lo) return r;
    int len = N - lo + 1;
    MRat d0inv = MRat(dc[vd]).inverse();
    std::vector<MRat> e(len);
    for (int k = 0; k < len; ++k) {
      MRat s = (k == 0) ? MRat(1) : MRat();
      for (int j = 1; j <= k && vd + j <= M; ++j) {
        if (dc[vd + j].is_zero() || e[k - j].is_zero()) continue;
        s = s - MRat(dc[vd + j]) * e[k - j];
      }
      e[k] = s * d0inv;
    }
    for (int k = 0; k < len; ++k) {
      MRat s;
      for (int i = 0; i <= k; ++i) {
        if (vn + i > M || nc[vn + i].is_zero() || e[k - i].is_zero()) continue;
        s = s + MRat(nc[vn + i]) * e[k - i];
      }
      r.c.push_back(s * fixed_inv);
    }
    return r;
  }
  throw std::runtime_error("expand: Laurent window could not be established (hard cap reached)");
}

namespace {
constexpr int kZeroLo = 1 << 20;
}

LazySeries lazy_expand(const MRat& f, std::vector<Placement> pl) {
  LazySeries s;
  if (f.is_zero()) {
    s.zero = true;
    s.lo = kZeroLo;
    s.through = [](int N) { return Laurent<MRat>::zero(N); };
    return s;
  }
  s.lo = expand_valuation(f, pl);
  s.through = [f, pl = std::move(pl)](int N) { return expand(f, pl, N); };
  return s;
}

LazySeries lazy_series(int lo, std::function<Laurent<MRat>(int)> through) {
  LazySeries s;
  s.lo = lo;
  s.through = std::move(through);
  return s;
}

int product_lo(const std::vector<LazySeries>& fs) {
  int lo = 0;
  for (auto& f : fs) {
    if (f.zero) return kZeroLo;
    lo += f.lo;
  }
  return lo;
}

int sum_of_products_lo(const std::vector<std::vector<LazySeries>>& terms) {
  int lo = kZeroLo;
  for (auto& t : terms) lo = std::min(lo, product_lo(t));
  return lo;
}

Laurent<MRat> product_through(const std::vector<LazySeries>& fs, int N) {
  int total = product_lo(fs);
  if (total >= kZeroLo || total > N) {
    auto z = Laurent<MRat>::zero(N);
    z.lo = std::max(z.lo, std::min(total, kZeroLo));
    return z;
  }
  Laurent<MRat> acc;
  bool first = true;
  for (auto& f : fs) {
    auto s = f.through(N - (total - f.lo));
    // make lo explicit so that the product window is exact
    if (s.lo < f.lo) s = normalized(s);
    if (first) {
      acc = std::move(s);
      first = false;
    } else {
      acc = acc * s;
    }
  }
  if (first) {
    acc.lo = 0;
    acc.hi = N;
    acc.c.assign(N + 1, MRat(1));
    for (int k = 1; k <= N; ++k) acc.c[k] = MRat();
    if (N < 0) acc.c.clear();
  }
  if (acc.hi > N) acc = acc.truncated(N);
  return acc;
}

Laurent<MRat> sum_of_products_through(const std::vector<std::vector<LazySeries>>& terms, int N) {
  int lo = sum_of_products_lo(terms);
  Laurent<MRat> r;
  r.lo = std::min(lo, N + 1);
  r.hi = N;
  r.c.assign(std::max(0, N - r.lo + 1), MRat());
  for (auto& t : terms) {
    if (product_lo(t) > N) continue;
    auto p = product_through(t, N);
    for (int k = std::max(p.lo, r.lo); k <= N; ++k) {
      const MRat& v = p.at(k);
      if (!v.is_zero()) r.c[k - r.lo] += v;
    }
  }
  return r;
}

}  // namespace toprec
