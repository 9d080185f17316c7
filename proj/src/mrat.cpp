#include "toprec/mrat.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "toprec/upoly.hpp"

namespace toprec {

// ---- registry ----

namespace {

struct Registry {
  std::shared_mutex mu;
  std::deque<FactorInfo> items;
  std::unordered_map<MPoly, FactorId, MPolyHash> index;
  std::map<std::vector<Sym>, std::vector<FactorId>> by_vars;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::optional<FactorId> find_factor(const MPoly& prim) {
  auto& r = registry();
  std::shared_lock lk(r.mu);
  auto it = r.index.find(prim);
  if (it == r.index.end()) return std::nullopt;
  return it->second;
}

FactorId register_factor(const MPoly& prim, bool maybe_reducible) {
  auto& r = registry();
  std::unique_lock lk(r.mu);
  auto it = r.index.find(prim);
  if (it != r.index.end()) return it->second;
  FactorInfo f;
  f.poly = prim;
  f.vars = prim.vars();
  f.maybe_reducible = maybe_reducible;
  if (prim.total_degree() == 1) {
    f.linear = true;
    f.lin_var = f.vars.front();
    auto c = prim.coeffs_in(f.lin_var);
    f.scale = c[1].constant_term();
    f.lin_value = -c[0] * (Rational(1) / f.scale);
    f.maybe_reducible = false;
  }
  FactorId id = static_cast<FactorId>(r.items.size());
  r.items.push_back(std::move(f));
  r.index.emplace(prim, id);
  r.by_vars[r.items.back().vars].push_back(id);
  return id;
}

std::vector<FactorId> factors_with_vars_within(const std::vector<Sym>& vars) {
  auto& r = registry();
  std::shared_lock lk(r.mu);
  std::vector<FactorId> out;
  for (auto& [vs, ids] : r.by_vars) {
    if (vs.size() < 2) continue;
    if (std::includes(vars.begin(), vars.end(), vs.begin(), vs.end())) out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

std::mt19937_64& rng() {
  thread_local std::mt19937_64 g(0x5eed1234abcdull);
  return g;
}

Rational random_value() {
  std::uniform_int_distribution<long> d(-1000, 1000);
  long a = d(rng());
  std::uniform_int_distribution<long> e(1, 37);
  Rational q(a, e(rng()));
  q.canonicalize();
  return q;
}

// Specialize all variables except `keep`.
UPoly specialize(const MPoly& p, Sym keep, const std::map<Sym, Rational>& values) {
  std::map<Sym, std::vector<Rational>> powers;
  std::vector<Rational> c(std::max(p.degree(keep), 0) + 1, Rational(0));
  for (auto& [m, a] : p.terms()) {
    Rational t = a;
    for (int i = 0; i < m.n; ++i) {
      if (m.v[i] == keep) continue;
      auto& pw = powers[m.v[i]];
      if (pw.empty()) pw.push_back(1);
      const Rational& val = values.at(m.v[i]);
      while (static_cast<int>(pw.size()) <= m.e[i]) pw.push_back(pw.back() * val);
      t *= pw[m.e[i]];
    }
    c[m.exp(keep)] += t;
  }
  return UPoly(std::move(c));
}

// Necessary condition for f | p; false means certainly not divisible.
bool screen_divisible(const MPoly& p, const FactorInfo& f) {
  std::map<Sym, Rational> values;
  for (Sym s : p.vars()) values[s] = random_value();
  for (Sym s : f.vars) values[s] = random_value();
  Sym keep = f.vars.front();
  UPoly fs = specialize(f.poly, keep, values);
  if (fs.degree() < 1) return true;
  UPoly ps = specialize(p, keep, values);
  return ps.divmod(fs).second.is_zero();
}

std::optional<MPoly> try_divide(const MPoly& p, const FactorInfo& f) {
  if (p.is_zero()) return MPoly();
  for (Sym s : f.vars)
    if (p.degree(s) < f.poly.degree(s)) return std::nullopt;
  if (!screen_divisible(p, f)) return std::nullopt;
  if (f.linear) {
    auto q = p.divide_linear(f.lin_var, f.lin_value);
    if (!q) return std::nullopt;
    *q *= Rational(1) / f.scale;
    return q;
  }
  return p.divide_exact(f.poly);
}

void add_factor(FactorList& list, FactorId id, int e) {
  if (e == 0) return;
  auto it = std::lower_bound(list.begin(), list.end(), id, [](auto& a, FactorId b) { return a.first < b; });
  if (it != list.end() && it->first == id) {
    it->second += e;
    if (it->second == 0) list.erase(it);
  } else {
    list.insert(it, {id, e});
  }
}

// Factors of g (univariate in v): rational roots, then square-free parts of the rest.
void add_univariate(FactorList& out, const UPoly& g, Sym v) {
  auto rs = rational_roots(g);
  for (auto& [root, mult] : rs.roots) {
    MPoly prim = (MPoly::var(v) - MPoly(root)).primitive();
    add_factor(out, register_factor(prim, false), mult);
  }
  for (auto& [part, mult] : squarefree(rs.rest)) {
    MPoly prim = part.to_mpoly(v).primitive();
    add_factor(out, register_factor(prim, part.degree() >= 4), mult);
  }
}

}  // namespace

const FactorInfo& factor_info(FactorId id) {
  auto& r = registry();
  std::shared_lock lk(r.mu);
  return r.items.at(id);
}

std::size_t factor_count() {
  auto& r = registry();
  std::shared_lock lk(r.mu);
  return r.items.size();
}

MPoly expand_factors(const FactorList& f) {
  MPoly r(1);
  for (auto& [id, e] : f) r *= factor_info(id).poly.pow(e);
  return r;
}

namespace {

MPoly divide_monomial(const MPoly& p, Sym v, int k) {
  std::vector<MPoly::Term> t;
  Monomial d = Monomial::of(v, k);
  for (auto& [m, c] : p.terms()) t.emplace_back(m / d, c);
  return MPoly::from_terms(std::move(t));
}

UPoly univariate_content(const MPoly& p, Sym v) {
  std::map<Monomial, std::vector<Rational>> groups;
  int d = p.degree(v);
  for (auto& [m, c] : p.terms()) {
    auto& g = groups[m.without(v)];
    if (g.empty()) g.assign(d + 1, Rational(0));
    g[m.exp(v)] += c;
  }
  UPoly acc;
  for (auto& [m, c] : groups) {
    acc = ugcd(acc, UPoly(c));
    if (acc.degree() < 1) return acc;
  }
  return acc;
}

}  // namespace

Factorization factorize(const MPoly& p) {
  if (p.is_zero()) throw std::domain_error("factorize: zero polynomial");
  Factorization out;
  if (p.is_constant()) {
    out.unit = p.constant_term();
    return out;
  }
  MPoly rest = p.primitive();
  if (auto id = find_factor(rest)) {
    out.factors.emplace_back(*id, 1);
  } else {
    for (Sym v : rest.vars()) {
      int k = rest.min_degree(v);
      if (k > 0) {
        rest = divide_monomial(rest, v, k);
        add_factor(out.factors, register_factor(MPoly::var(v), false), k);
      }
    }
    for (Sym v : rest.vars()) {
      UPoly g = univariate_content(rest, v);
      if (g.degree() < 1) continue;
      rest = *rest.divide_exact(g.to_mpoly(v));
      add_univariate(out.factors, g, v);
    }
    auto vars = rest.vars();
    if (vars.size() >= 2) {
      for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
          for (int sg : {1, -1}) {
            MPoly value = MPoly::var(vars[j]) * Rational(sg);
            while (rest.subs(vars[i], value).is_zero()) {
              rest = *rest.divide_linear(vars[i], value);
              add_factor(out.factors, register_factor((MPoly::var(vars[i]) - value).primitive(), false), 1);
            }
          }
      vars = rest.vars();
      if (vars.size() >= 2) {
        for (FactorId id : factors_with_vars_within(vars)) {
          const FactorInfo& f = factor_info(id);
          while (true) {
            auto q = try_divide(rest, f);
            if (!q) break;
            rest = std::move(*q);
            add_factor(out.factors, id, 1);
          }
        }
      }
    }
    if (!rest.is_constant()) {
      MPoly prim = rest.primitive();
      bool multi = prim.vars().size() >= 2;
      add_factor(out.factors, register_factor(prim, multi || prim.total_degree() >= 4), 1);
    }
  }
  Rational lead = 1;
  for (auto& [id, e] : out.factors) {
    Rational l = factor_info(id).poly.leading().second;
    for (int k = 0; k < e; ++k) lead *= l;
  }
  out.unit = p.leading().second / lead;
  return out;
}

// ---- MRat ----

MRat MRat::from_factored(MPoly num, FactorList den) {
  MRat r;
  r.num_ = std::move(num);
  if (!r.num_.is_zero()) r.den_ = std::move(den);
  r.reduce();
  return r;
}

MRat MRat::fraction(const MPoly& num, const MPoly& den) {
  if (den.is_zero()) throw std::domain_error("MRat with zero denominator");
  auto f = factorize(den);
  return from_factored(num * (Rational(1) / f.unit), std::move(f.factors));
}

MPoly MRat::den() const { return expand_factors(den_); }

Rational MRat::constant_value() const {
  if (!is_constant()) throw std::logic_error("MRat is not constant: " + str());
  return num_.constant_term();
}

std::vector<Sym> MRat::vars() const {
  auto v = num_.vars();
  for (auto& [id, e] : den_) {
    auto& fv = factor_info(id).vars;
    v.insert(v.end(), fv.begin(), fv.end());
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool MRat::has_var(Sym s) const {
  if (num_.has_var(s)) return true;
  for (auto& [id, e] : den_) {
    auto& fv = factor_info(id).vars;
    if (std::find(fv.begin(), fv.end(), s) != fv.end()) return true;
  }
  return false;
}

void MRat::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [id, e] : den_) {
    const FactorInfo& f = factor_info(id);
    while (e > 0) {
      auto q = try_divide(num_, f);
      if (!q) break;
      num_ = std::move(*q);
      --e;
    }
  }
  den_.erase(std::remove_if(den_.begin(), den_.end(), [](auto& x) { return x.second == 0; }), den_.end());
  if (den_.empty()) return;
  bool any_reducible = false;
  for (auto& [id, e] : den_) any_reducible |= factor_info(id).maybe_reducible;
  if (!any_reducible || vars().size() > 2) return;
  for (std::size_t i = 0; i < den_.size(); ++i) {
    const FactorInfo& f = factor_info(den_[i].first);
    if (!f.maybe_reducible) continue;
    MPoly g = gcd(num_, f.poly);
    if (g.is_constant()) continue;
    MPoly h = *f.poly.divide_exact(g);
    int e = den_[i].second;
    auto fg = factorize(g);
    Rational unit = fg.unit;
    FactorList nd = den_;
    nd.erase(nd.begin() + static_cast<long>(i));
    for (auto& [id, k] : fg.factors) add_factor(nd, id, k * e);
    if (!h.is_constant()) {
      auto fh = factorize(h);
      unit *= fh.unit;
      for (auto& [id, k] : fh.factors) add_factor(nd, id, k * e);
    } else {
      unit *= h.constant_term();
    }
    Rational scale = 1;
    for (int k = 0; k < e; ++k) scale /= unit;
    num_ *= scale;
    den_ = std::move(nd);
    reduce();
    return;
  }
}

MRat MRat::operator-() const {
  MRat r = *this;
  r.num_ = -r.num_;
  return r;
}

MRat operator+(const MRat& a, const MRat& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return MRat::from_factored(a.num_ + b.num_, a.den_);
  FactorList l = a.den_;
  for (auto& [id, e] : b.den_) {
    auto it = std::lower_bound(l.begin(), l.end(), id, [](auto& x, FactorId y) { return x.first < y; });
    if (it != l.end() && it->first == id) it->second = std::max(it->second, e);
    else l.insert(it, {id, e});
  }
  auto missing = [&](const FactorList& have) {
    FactorList m;
    for (auto& [id, e] : l) {
      int k = 0;
      for (auto& [hid, he] : have)
        if (hid == id) k = he;
      if (e - k > 0) m.emplace_back(id, e - k);
    }
    return m;
  };
  MPoly n = a.num_ * expand_factors(missing(a.den_)) + b.num_ * expand_factors(missing(b.den_));
  return MRat::from_factored(std::move(n), std::move(l));
}

MRat operator-(const MRat& a, const MRat& b) { return a + (-b); }

MRat operator*(const MRat& a, const MRat& b) {
  if (a.is_zero() || b.is_zero()) return MRat();
  if (a.is_constant()) return b * a.num_.constant_term();
  if (b.is_constant()) return a * b.num_.constant_term();
  MPoly an = a.num_, bn = b.num_;
  FactorList ad = a.den_, bd = b.den_;
  auto cancel = [](FactorList& d, MPoly& n) {
    for (auto& [id, e] : d) {
      const FactorInfo& f = factor_info(id);
      while (e > 0) {
        auto q = try_divide(n, f);
        if (!q) break;
        n = std::move(*q);
        --e;
      }
    }
  };
  cancel(ad, bn);
  cancel(bd, an);
  FactorList d;
  for (auto& [id, e] : ad) add_factor(d, id, e);
  for (auto& [id, e] : bd) add_factor(d, id, e);
  MRat r;
  r.num_ = an * bn;
  r.den_ = std::move(d);
  bool any_reducible = false;
  for (auto& [id, e] : r.den_) any_reducible |= factor_info(id).maybe_reducible;
  if (any_reducible) r.reduce();
  return r;
}

MRat MRat::operator*(const Rational& c) const {
  if (c == 0) return MRat();
  MRat r = *this;
  r.num_ *= c;
  return r;
}

MRat MRat::inverse() const {
  if (is_zero()) throw std::domain_error("MRat division by zero");
  auto f = factorize(num_);
  MRat r;
  r.num_ = expand_factors(den_) * (Rational(1) / f.unit);
  r.den_ = std::move(f.factors);
  return r;
}

MRat operator/(const MRat& a, const MRat& b) { return a * b.inverse(); }

MRat MRat::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  if (k == 0) return MRat(1);
  MRat r;
  r.num_ = num_.pow(static_cast<unsigned>(k));
  r.den_ = den_;
  for (auto& [id, e] : r.den_) e *= k;
  return r;
}

MRat MRat::diff(Sym s) const {
  std::vector<std::size_t> S;
  for (std::size_t i = 0; i < den_.size(); ++i) {
    auto& fv = factor_info(den_[i].first).vars;
    if (std::find(fv.begin(), fv.end(), s) != fv.end()) S.push_back(i);
  }
  if (S.empty()) return from_factored(num_.diff(s), den_);
  MPoly P(1);
  for (auto i : S) P *= factor_info(den_[i].first).poly;
  MPoly n = num_.diff(s) * P;
  for (auto i : S) {
    const MPoly& f = factor_info(den_[i].first).poly;
    MPoly others(1);
    for (auto j : S)
      if (j != i) others *= factor_info(den_[j].first).poly;
    n -= num_ * f.diff(s) * others * Rational(den_[i].second);
  }
  FactorList d = den_;
  for (auto i : S) d[i].second += 1;
  return from_factored(std::move(n), std::move(d));
}

MRat MRat::diff(Sym s, int k) const {
  MRat r = *this;
  for (int i = 0; i < k; ++i) r = r.diff(s);
  return r;
}

namespace {

bool is_plain_var(const MRat& v, Sym& out) {
  if (!v.is_polynomial() || v.num().size() != 1) return false;
  auto& [m, c] = v.num().terms().front();
  if (c != 1 || m.n != 1 || m.e[0] != 1) return false;
  out = m.v[0];
  return true;
}

std::string binding_name(const std::map<Sym, MRat>& b) {
  std::string s;
  for (auto& [k, v] : b) {
    if (!s.empty()) s += ", ";
    s += symbol_name(k) + " -> " + v.str();
  }
  return s;
}

// Apply a polynomial map to each factor, collecting the image factorization.
template <class F>
MRat map_factored(const MPoly& num, const FactorList& den, F&& image, const std::string& what) {
  MPoly n = image(num);
  FactorList d;
  Rational scale = 1;
  for (auto& [id, e] : den) {
    MPoly img = image(factor_info(id).poly);
    if (img.is_zero()) throw std::domain_error("denominator vanishes identically under substitution " + what);
    auto f = factorize(img);
    for (int k = 0; k < e; ++k) scale /= f.unit;
    for (auto& [fid, fe] : f.factors) add_factor(d, fid, fe * e);
  }
  return MRat::from_factored(n * scale, std::move(d));
}

Sym temp_symbol(Sym s) { return intern("__tmp_" + symbol_name(s)); }

// p evaluated at v = value, value free of v; result as MRat.
MRat subs_one(const MRat& f, Sym v, const MRat& value) {
  if (!f.has_var(v)) return f;
  auto horner = [&](const MPoly& p) -> MRat {
    if (!p.has_var(v)) return MRat(p);
    if (value.is_polynomial()) return MRat(p.subs(v, value.num()));
    // p(P/Q) = sum a_k P^k Q^{d-k} / Q^d
    auto a = p.coeffs_in(v);
    int d = static_cast<int>(a.size()) - 1;
    MPoly P = value.num(), Q = value.den();
    MPoly r = a[d];
    MPoly qpow(1);
    for (int k = d - 1; k >= 0; --k) {
      qpow *= Q;
      r = r * P + a[k] * qpow;
    }
    FactorList den = value.den_factors();
    for (auto& [id, e] : den) e *= d;
    return MRat::from_factored(std::move(r), std::move(den));
  };
  MRat num = horner(f.num());
  MRat den(1);
  FactorList keep;
  for (auto& [id, e] : f.den_factors()) {
    const FactorInfo& info = factor_info(id);
    if (std::find(info.vars.begin(), info.vars.end(), v) == info.vars.end()) {
      keep.emplace_back(id, e);
      continue;
    }
    MRat img = horner(info.poly);
    if (img.is_zero())
      throw std::domain_error("denominator vanishes identically under substitution " + symbol_name(v) + " -> " +
                              value.str());
    den *= img.pow(e);
  }
  return num * MRat::from_factored(MPoly(1), keep) / den;
}

}  // namespace

MRat MRat::rename(const std::vector<std::pair<Sym, Sym>>& map) const {
  std::string what;
  for (auto& [a, b] : map) what += symbol_name(a) + " -> " + symbol_name(b) + " ";
  return map_factored(num_, den_, [&](const MPoly& p) { return p.rename(map); }, what);
}

MRat MRat::subs_values(const std::map<Sym, Rational>& values) const {
  std::string what;
  for (auto& [a, b] : values) what += symbol_name(a) + " -> " + to_string(b) + " ";
  return map_factored(num_, den_, [&](const MPoly& p) { return p.subs_many(values); }, what);
}

MRat MRat::subs(const std::map<Sym, MRat>& bindings) const {
  std::map<Sym, MRat> active;
  for (auto& [k, v] : bindings)
    if (has_var(k)) active.emplace(k, v);
  if (active.empty()) return *this;
  bool all_const = true, all_rename = true;
  std::vector<std::pair<Sym, Sym>> ren;
  std::map<Sym, Rational> consts;
  for (auto& [k, v] : active) {
    Sym t;
    if (v.is_constant()) consts[k] = v.constant_value();
    else all_const = false;
    if (is_plain_var(v, t)) ren.emplace_back(k, t);
    else all_rename = false;
  }
  try {
    if (all_const) return subs_values(consts);
    if (all_rename) return rename(ren);
    // general: move bound variables out of the way, then substitute one at a time
    std::vector<std::pair<Sym, Sym>> to_tmp;
    for (auto& [k, v] : active) to_tmp.emplace_back(k, temp_symbol(k));
    MRat f = rename(to_tmp);
    for (auto& [k, v] : active) f = subs_one(f, temp_symbol(k), v);
    return f;
  } catch (const std::domain_error& e) {
    throw std::domain_error(std::string(e.what()) + " [binding " + binding_name(active) + "]");
  }
}

bool operator==(const MRat& a, const MRat& b) {
  if (a.den_ == b.den_ && a.num_ == b.num_) return true;
  return (a - b).is_zero();
}

std::string MRat::str() const {
  if (den_.empty()) return num_.str();
  std::ostringstream os;
  os << "(" << num_.str() << ")/(";
  bool first = true;
  for (auto& [id, e] : den_) {
    if (!first) os << "*";
    first = false;
    os << "(" << factor_info(id).poly.str() << ")";
    if (e > 1) os << "^" << e;
  }
  os << ")";
  return os.str();
}

}  // namespace toprec
