#include "toprec/curve.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace toprec {

Sym curve_var() {
  static Sym z = intern("z");
  return z;
}

struct Curve::DeckCache {
  std::mutex mu;
  std::map<std::pair<int, Rational>, std::vector<Rational>> series;  // (side, point) -> coefficients
};

namespace {

UPoly upoly_of(const MPoly& p) { return UPoly::from_mpoly(p, curve_var()); }

bool regular_at(const MRat& f, const Rational& p) {
  return UPoly::from_mpoly(f.den(), curve_var()).eval(p) != 0;
}

Rational value_at(const MRat& f, const Rational& p) {
  return upoly_of(f.num()).eval(p) / upoly_of(f.den()).eval(p);
}

std::string side_name(Side s) { return s == Side::X ? "x" : "y"; }

std::vector<RamificationPoint> critical_points(const MRat& f, const MRat& df, const MRat& g, const MRat& dg, Side s) {
  if (df.is_zero()) throw CurveValidationError(side_name(s) + " is constant");
  UPoly num = upoly_of(df.num());
  auto rs = rational_roots(num);
  if (rs.rest.degree() >= 1)
    throw CurveValidationError("critical point of " + side_name(s) + " at an irrational location (zeros of " +
                               rs.rest.str() + "); reparametrize so that all zeros of d" + side_name(s) +
                               " are rational");
  std::vector<RamificationPoint> out;
  for (auto& [p, mult] : rs.roots) {
    if (mult != 1)
      throw CurveValidationError("all critical points of " + side_name(s) + " must be simple: d" + side_name(s) +
                                 " has a zero of order " + std::to_string(mult) + " at z = " + to_string(p));
    std::string o = side_name(other(s));
    if (!regular_at(g, p))
      throw CurveValidationError(o + " must be regular at the critical point z = " + to_string(p) + " of " +
                                 side_name(s));
    if (value_at(dg, p) == 0)
      throw CurveValidationError("d" + o + " must not vanish at the critical point z = " + to_string(p) + " of " +
                                 side_name(s));
    out.push_back({p, s});
  }
  // z = infinity
  Sym zeta = intern("__zeta");
  MRat at_inf = f.subs(curve_var(), MRat::var(zeta).inverse());
  UPoly n = UPoly::from_mpoly(at_inf.num(), zeta), d = UPoly::from_mpoly(at_inf.den(), zeta);
  auto ser = series_at(n, d, Rational(0), 1);
  if (ser.lo >= 0 && ser.at(1) == 0)
    throw CurveValidationError(side_name(s) + " has a critical point at z = infinity; reparametrize to move it to a finite location");
  return out;
}

}  // namespace

Curve::Curve(std::string name, MRat x, MRat y)
    : name_(std::move(name)), x_(std::move(x)), y_(std::move(y)), cache_(std::make_shared<DeckCache>()) {
  for (auto* f : {&x_, &y_})
    for (Sym s : f->vars())
      if (s != curve_var()) throw CurveValidationError("curve functions must depend on z only");
  dx_ = x_.diff(curve_var());
  dy_ = y_.diff(curve_var());
  if (dx_.is_zero()) throw CurveValidationError("x is constant");
  if (dy_.is_zero()) throw CurveValidationError("y is constant");
  rx_ = critical_points(x_, dx_, y_, dy_, Side::X);
  try {
    ry_ = critical_points(y_, dy_, x_, dx_, Side::Y);
  } catch (const CurveValidationError& e) {
    y_error_ = e.what();
  }
  for (auto& a : rx_)
    for (auto& b : ry_)
      if (a.location == b.location)
        throw CurveValidationError("zeros of dx and dy must be pairwise distinct; both vanish at z = " +
                                   to_string(a.location));
}

MRat Curve::fn_at(Side s, Sym v) const { return fn(s).rename({{curve_var(), v}}); }
MRat Curve::dfn_at(Side s, Sym v) const { return dfn(s).rename({{curve_var(), v}}); }

const std::vector<RamificationPoint>& Curve::ramification_points(Side s) const {
  if (s == Side::Y && !y_error_.empty()) throw CurveValidationError("dual side invalid: " + y_error_);
  return s == Side::X ? rx_ : ry_;
}

std::vector<RamificationPoint> ramification_points(const Curve& c, Side s) { return c.ramification_points(s); }

std::vector<Rational> Curve::deck_series(const RamificationPoint& rp, int K) const {
  K = std::max(K, 2);
  std::lock_guard lk(cache_->mu);
  auto key = std::make_pair(rp.side == Side::X ? 0 : 1, rp.location);
  auto it = cache_->series.find(key);
  if (it != cache_->series.end() && static_cast<int>(it->second.size()) > K) {
    return std::vector<Rational>(it->second.begin(), it->second.begin() + K + 1);
  }
  const MRat& f = fn(rp.side);
  UPoly num = upoly_of(f.num()), den = upoly_of(f.den());
  // X(u) = f(p+u) - f(p) through u^{K+1}
  auto ser = series_at(num, den, rp.location, K + 1);
  std::vector<Rational> X(K + 2, Rational(0));
  for (int k = 1; k <= K + 1; ++k) X[k] = ser.at(k);
  if (X[1] != 0 || X[2] == 0) throw std::logic_error("deck_series: point is not a simple critical point");
  std::vector<Rational> s(K + 1, Rational(0));
  s[1] = -1;
  for (int n = 2; n <= K; ++n) {
    auto lhs = compose(X, s, n + 1);
    // X(t) has coefficient X[n+1] at t^{n+1}
    Rational e = lhs[n + 1] - X[n + 1];
    s[n] = e / (2 * X[2]);
  }
  // involution and invariance checks on the stored order
  auto ss = compose(s, s, K);
  for (int k = 0; k <= K; ++k)
    if (ss[k] != (k == 1 ? 1 : 0)) throw std::logic_error("deck_series: involution check failed");
  auto fx = compose(X, s, K + 1);
  for (int k = 0; k <= K; ++k)
    if (fx[k] != (k == 0 ? Rational(0) : X[k])) throw std::logic_error("deck_series: invariance check failed");
  cache_->series[key] = s;
  return s;
}

ShiftFn Curve::deck_shift(const RamificationPoint& rp) const {
  Curve self = *this;
  return [self, rp](int K) { return self.deck_series(rp, K); };
}

Curve Curve::swapped() const { return Curve(name_ + "~swap", y_, x_); }

Curve Curve::shifted_x(const Rational& c) const { return Curve(name_ + "~shift", x_ + MRat(c), y_); }

MRat d_op(const Curve& c, const MRat& f, Sym v, Side s) { return f.diff(v) / c.dfn_at(s, v); }

}  // namespace toprec
