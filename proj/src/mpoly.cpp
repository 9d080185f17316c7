#include "toprec/mpoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace toprec {

// ---- Monomial ----

Monomial Monomial::of(Sym s, int k) {
  Monomial m;
  if (k < 0) throw std::domain_error("negative exponent in monomial");
  if (k == 0) return m;
  m.n = 1;
  m.v[0] = s;
  m.e[0] = static_cast<std::uint16_t>(k);
  return m;
}

int Monomial::exp(Sym s) const {
  for (int i = 0; i < n; ++i)
    if (v[i] == s) return e[i];
  return 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (int i = 0; i < n; ++i) d += e[i];
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  int i = 0, j = 0;
  auto push = [&](Sym s, int k) {
    if (r.n >= kMaxMonomialVars) throw std::length_error("monomial has too many variables");
    if (k > 0xFFFF) throw std::overflow_error("monomial exponent overflow");
    r.v[r.n] = s;
    r.e[r.n] = static_cast<std::uint16_t>(k);
    ++r.n;
  };
  while (i < n || j < o.n) {
    if (j == o.n || (i < n && v[i] < o.v[j])) {
      push(v[i], e[i]);
      ++i;
    } else if (i == n || o.v[j] < v[i]) {
      push(o.v[j], o.e[j]);
      ++j;
    } else {
      push(v[i], e[i] + o.e[j]);
      ++i;
      ++j;
    }
  }
  return r;
}

bool Monomial::divisible_by(const Monomial& o) const {
  for (int j = 0; j < o.n; ++j)
    if (exp(o.v[j]) < o.e[j]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < n; ++i) {
    int k = e[i] - o.exp(v[i]);
    if (k < 0) throw std::domain_error("monomial not divisible");
    if (k > 0) {
      r.v[r.n] = v[i];
      r.e[r.n] = static_cast<std::uint16_t>(k);
      ++r.n;
    }
  }
  return r;
}

Monomial Monomial::without(Sym s) const {
  Monomial r;
  for (int i = 0; i < n; ++i) {
    if (v[i] == s) continue;
    r.v[r.n] = v[i];
    r.e[r.n] = e[i];
    ++r.n;
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (int i = 0; i < n; ++i) {
    h ^= (static_cast<std::size_t>(v[i]) << 16) | e[i];
    h *= 1099511628211ull;
  }
  return h;
}

int compare(const Monomial& a, const Monomial& b) {
  int i = 0, j = 0;
  while (true) {
    if (i == a.n && j == b.n) return 0;
    if (i == a.n) return -1;
    if (j == b.n) return 1;
    if (a.v[i] < b.v[j]) return 1;
    if (b.v[j] < a.v[i]) return -1;
    if (a.e[i] != b.e[j]) return a.e[i] < b.e[j] ? -1 : 1;
    ++i;
    ++j;
  }
}

// ---- MPoly ----

namespace {

using Term = MPoly::Term;

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = 1;
    else if (j == b.size()) c = -1;
    else c = compare(a[i].first, b[j].first);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
      if (negate_b) out.back().second = -out.back().second;
    } else {
      Rational s = negate_b ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
      if (s != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MPoly::MPoly(const Rational& c) {
  if (c != 0) terms_.emplace_back(Monomial{}, c);
}

MPoly MPoly::var(Sym s) { return monomial(Monomial::of(s, 1), 1); }

MPoly MPoly::monomial(const Monomial& m, const Rational& c) {
  MPoly p;
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

MPoly MPoly::from_terms(std::vector<Term> t) {
  std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return compare(a.first, b.first) < 0; });
  MPoly p;
  for (auto& term : t) {
    if (!p.terms_.empty() && p.terms_.back().first == term.first) {
      p.terms_.back().second += term.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (term.second != 0) {
      p.terms_.push_back(std::move(term));
    }
  }
  return p;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

Rational MPoly::constant_term() const {
  if (!terms_.empty() && terms_.front().first.is_one()) return terms_.front().second;
  return 0;
}

std::vector<Sym> MPoly::vars() const {
  std::vector<Sym> out;
  for (auto& [m, c] : terms_)
    for (int i = 0; i < m.n; ++i) out.push_back(m.v[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool MPoly::has_var(Sym s) const {
  for (auto& [m, c] : terms_)
    if (m.exp(s)) return true;
  return false;
}

int MPoly::degree(Sym s) const {
  int d = terms_.empty() ? -1 : 0;
  for (auto& [m, c] : terms_) d = std::max(d, m.exp(s));
  return d;
}

int MPoly::min_degree(Sym s) const {
  if (terms_.empty()) return 0;
  int d = 1 << 30;
  for (auto& [m, c] : terms_) d = std::min(d, m.exp(s));
  return d;
}

int MPoly::total_degree() const {
  int d = terms_.empty() ? -1 : 0;
  for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly MPoly::mul_monomial(const Monomial& m, const Rational& c) const {
  MPoly r;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (auto& [mm, cc] : terms_) r.terms_.emplace_back(mm * m, cc * c);
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  const MPoly& small = a.size() <= b.size() ? a : b;
  const MPoly& big = a.size() <= b.size() ? b : a;
  std::vector<std::vector<Term>> parts;
  parts.reserve(small.size());
  for (auto& [m, c] : small.terms_) parts.push_back(big.mul_monomial(m, c).terms_);
  while (parts.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(merge_terms(parts[i], parts[i + 1], false));
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  MPoly r;
  r.terms_ = std::move(parts[0]);
  return r;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly r(1), base = *this;
  while (k) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

MPoly MPoly::diff(Sym s) const {
  std::vector<Term> out;
  for (auto& [m, c] : terms_) {
    int k = m.exp(s);
    if (!k) continue;
    Monomial mm = m.without(s) * Monomial::of(s, k - 1);
    out.emplace_back(mm, c * k);
  }
  return from_terms(std::move(out));
}

std::vector<MPoly> MPoly::coeffs_in(Sym s) const {
  int d = degree(s);
  std::vector<std::vector<Term>> buckets(d < 0 ? 0 : d + 1);
  for (auto& [m, c] : terms_) buckets[m.exp(s)].emplace_back(m.without(s), c);
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

MPoly MPoly::from_coeffs(Sym s, const std::vector<MPoly>& c) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    Monomial sk = Monomial::of(s, static_cast<int>(k));
    for (auto& [m, cc] : c[k].terms_) out.emplace_back(m * sk, cc);
  }
  return from_terms(std::move(out));
}

MPoly MPoly::subs(Sym s, const MPoly& value) const {
  if (!has_var(s)) return *this;
  if (value.is_constant()) return subs(s, value.constant_term());
  auto c = coeffs_in(s);
  MPoly r;
  for (std::size_t k = c.size(); k-- > 0;) {
    r = r * value;
    r += c[k];
  }
  return r;
}

MPoly MPoly::subs(Sym s, const Rational& value) const {
  if (!has_var(s)) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  Rational pw;
  for (auto& [m, c] : terms_) {
    int k = m.exp(s);
    if (k == 0) {
      out.emplace_back(m, c);
      continue;
    }
    mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), k);
    mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), k);
    out.emplace_back(m.without(s), c * pw);
  }
  return from_terms(std::move(out));
}

MPoly MPoly::subs_many(const std::map<Sym, Rational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  Rational pw;
  for (auto& [m, c] : terms_) {
    Monomial rest;
    Rational coef = c;
    for (int i = 0; i < m.n; ++i) {
      auto it = values.find(m.v[i]);
      if (it == values.end()) {
        rest.v[rest.n] = m.v[i];
        rest.e[rest.n] = m.e[i];
        ++rest.n;
      } else {
        mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num_mpz_t(), m.e[i]);
        mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den_mpz_t(), m.e[i]);
        coef *= pw;
      }
    }
    if (coef != 0) out.emplace_back(rest, coef);
  }
  return from_terms(std::move(out));
}

MPoly MPoly::rename(const std::vector<std::pair<Sym, Sym>>& map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& [m, c] : terms_) {
    Monomial r;
    for (int i = 0; i < m.n; ++i) {
      Sym s = m.v[i];
      for (auto& [from, to] : map)
        if (from == s) {
          s = to;
          break;
        }
      r = r * Monomial::of(s, m.e[i]);
    }
    out.emplace_back(r, c);
  }
  return from_terms(std::move(out));
}

Rational MPoly::content() const {
  if (terms_.empty()) return 0;
  Integer g = 0, l = 1;
  for (auto& [m, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational r(abs(g), l);
  r.canonicalize();
  return r;
}

MPoly MPoly::primitive() const {
  if (terms_.empty()) return *this;
  Rational c = content();
  if (leading().second < 0) c = -c;
  MPoly r = *this;
  Rational inv = 1 / c;
  r *= inv;
  return r;
}

std::optional<MPoly> MPoly::divide_linear(Sym s, const MPoly& c) const {
  auto a = coeffs_in(s);
  if (a.empty()) return MPoly();
  int d = static_cast<int>(a.size()) - 1;
  if (d == 0) {
    if (a[0].is_zero()) return MPoly();
    return std::nullopt;
  }
  std::vector<MPoly> q(d);
  q[d - 1] = a[d];
  for (int k = d - 1; k >= 1; --k) q[k - 1] = a[k] + c * q[k];
  MPoly rem = a[0] + c * q[0];
  if (!rem.is_zero()) return std::nullopt;
  return from_coeffs(s, q);
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return MPoly();
  if (d.is_constant()) {
    MPoly r = *this;
    r *= Rational(1) / d.constant_term();
    return r;
  }
  // degree screen
  for (Sym s : d.vars())
    if (degree(s) < d.degree(s)) return std::nullopt;
  std::map<Monomial, Rational> rem;
  for (auto& [m, c] : terms_) rem.emplace(m, c);
  const auto& [lm, lc] = d.leading();
  std::vector<Term> quot;
  while (!rem.empty()) {
    auto it = std::prev(rem.end());
    if (!it->first.divisible_by(lm)) return std::nullopt;
    Monomial qm = it->first / lm;
    Rational qc = it->second / lc;
    quot.emplace_back(qm, qc);
    for (auto& [m, c] : d.terms_) {
      Monomial t = m * qm;
      auto f = rem.find(t);
      if (f == rem.end()) {
        rem.emplace(t, -(c * qc));
      } else {
        f->second -= c * qc;
        if (f->second == 0) rem.erase(f);
      }
    }
  }
  return from_terms(std::move(quot));
}

bool MPoly::operator==(const MPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].first == o.terms_[i].first) || terms_[i].second != o.terms_[i].second) return false;
  return true;
}

std::size_t MPoly::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto& [m, c] : terms_) {
    std::size_t hc = mpz_size(c.get_num_mpz_t()) ? mpz_getlimbn(c.get_num_mpz_t(), 0) : 0;
    hc = hc * 31 + (mpz_size(c.get_den_mpz_t()) ? mpz_getlimbn(c.get_den_mpz_t(), 0) : 0);
    if (sgn(c) < 0) hc = ~hc;
    h ^= m.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= hc + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    bool unit = (a == 1) && !m.is_one();
    if (!unit) os << to_string(a);
    for (int i = 0; i < m.n; ++i) {
      if (!unit || i > 0) os << "*";
      os << symbol_name(m.v[i]);
      if (m.e[i] > 1) os << "^" << m.e[i];
    }
  }
  return os.str();
}

// ---- gcd ----

namespace {

MPoly normalize(const MPoly& p) { return p.is_zero() ? p : p.primitive(); }

MPoly content_in(const MPoly& p, Sym v) {
  MPoly g;
  for (auto& c : p.coeffs_in(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return MPoly(1);
  }
  return g;
}

// pseudo-remainder of a by b in variable v
MPoly prem(const MPoly& a, const MPoly& b, Sym v) {
  auto bc = b.coeffs_in(v);
  int db = static_cast<int>(bc.size()) - 1;
  MPoly lb = bc.back();
  MPoly r = a;
  int dr = r.degree(v);
  while (!r.is_zero() && dr >= db) {
    auto rc = r.coeffs_in(v);
    MPoly lr = rc.back();
    MPoly shifted = b.mul_monomial(Monomial::of(v, dr - db), 1) * lr;
    r = r * lb - shifted;
    dr = r.degree(v);
  }
  return r;
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  if (a.is_constant() || b.is_constant()) return MPoly(1);
  auto va = a.vars(), vb = b.vars();
  std::vector<Sym> all;
  std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(all));
  Sym v = all.back();
  if (!a.has_var(v)) return gcd(a, content_in(b, v));
  if (!b.has_var(v)) return gcd(content_in(a, v), b);
  MPoly ca = content_in(a, v), cb = content_in(b, v);
  MPoly pa = *a.divide_exact(ca), pb = *b.divide_exact(cb);
  MPoly c = gcd(ca, cb);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (true) {
    MPoly r = prem(pa, pb, v);
    if (r.is_zero()) break;
    if (!r.has_var(v)) {
      pb = MPoly(1);
      break;
    }
    // rational content too, otherwise coefficients grow exponentially
    r = normalize(*r.divide_exact(content_in(r, v)));
    pa = std::move(pb);
    pb = std::move(r);
  }
  MPoly g = pb.has_var(v) ? *pb.divide_exact(content_in(pb, v)) : MPoly(1);
  return normalize(c * g);
}

}  // namespace toprec
