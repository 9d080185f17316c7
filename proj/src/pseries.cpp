#include "toprec/pseries.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace toprec {

PSeries PSeries::constant(int nparams, int cutoff, const MRat& c) {
  PSeries s(nparams, cutoff);
  s.add(PKey{0, std::vector<int>(nparams, 0)}, c);
  return s;
}

PSeries PSeries::monomial(int nparams, int cutoff, PKey k, const MRat& c) {
  PSeries s(nparams, cutoff);
  s.add(std::move(k), c);
  return s;
}

void PSeries::add(const PKey& k, const MRat& c) {
  if (static_cast<int>(k.w.size()) != np_) throw std::invalid_argument("PSeries: parameter count mismatch");
  if (k.h > cutoff_ || c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MRat PSeries::coeff(const PKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? MRat() : it->second;
}

PSeries PSeries::hbar_slice(int h) const {
  PSeries s(np_, 0);
  for (auto& [k, c] : terms_)
    if (k.h == h) s.add(PKey{0, k.w}, c);
  return s;
}

PSeries PSeries::operator+(const PSeries& o) const {
  PSeries r(np_, std::min(cutoff_, o.cutoff_));
  for (auto& [k, c] : terms_) r.add(k, c);
  for (auto& [k, c] : o.terms_) r.add(k, c);
  return r;
}

PSeries PSeries::operator-(const PSeries& o) const { return *this + o * Rational(-1); }

PSeries PSeries::operator*(const PSeries& o) const {
  if (np_ != o.np_) throw std::invalid_argument("PSeries: parameter count mismatch");
  PSeries r(np_, std::min(cutoff_, o.cutoff_));
  for (auto& [ka, ca] : terms_)
    for (auto& [kb, cb] : o.terms_) {
      if (ka.h + kb.h > r.cutoff_) continue;
      PKey k{ka.h + kb.h, ka.w};
      for (int i = 0; i < np_; ++i) k.w[i] += kb.w[i];
      r.add(k, ca * cb);
    }
  return r;
}

PSeries PSeries::operator*(const MRat& c) const {
  PSeries r(np_, cutoff_);
  for (auto& [k, v] : terms_) r.add(k, v * c);
  return r;
}

PSeries PSeries::operator*(const Rational& c) const {
  PSeries r(np_, cutoff_);
  for (auto& [k, v] : terms_) r.add(k, v * c);
  return r;
}

PSeries PSeries::exp() const {
  for (auto& [k, c] : terms_)
    if (k.h < 2) throw std::logic_error("PSeries::exp needs every term to carry hbar^2");
  PSeries result = constant(np_, cutoff_, MRat(1));
  PSeries power = result;
  for (int j = 1; 2 * j <= cutoff_; ++j) {
    power = power * (*this) * Rational(1, j);
    if (power.is_zero()) break;
    result = result + power;
  }
  return result;
}

PSeries PSeries::embed(int n, const std::vector<int>& map) const {
  PSeries r(n, cutoff_);
  for (auto& [k, c] : terms_) {
    PKey nk{k.h, std::vector<int>(n, 0)};
    for (int i = 0; i < np_; ++i) nk.w[map[i]] += k.w[i];
    r.add(nk, c);
  }
  return r;
}

PSeries PSeries::map_coeffs(const std::function<MRat(const MRat&)>& f) const {
  PSeries r(np_, cutoff_);
  for (auto& [k, c] : terms_) r.add(k, f(c));
  return r;
}

std::string PSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : terms_) {
    if (!first) os << "\n";
    first = false;
    os << "hbar^" << k.h;
    for (int i = 0; i < np_; ++i)
      if (k.w[i]) os << " w" << i << "^" << k.w[i];
    os << " : " << c.str();
  }
  return first ? "0" : os.str();
}

}  // namespace toprec
