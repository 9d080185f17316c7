#include "toprec/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace toprec {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string a = s.substr(0, slash);
  std::string b = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(a) || !valid_int(b) || b[0] == '-' || b[0] == '+')
    throw std::invalid_argument("malformed rational literal: " + s);
  if (a[0] == '+') a = a.substr(1);
  Integer num(a), den(b);
  if (den == 0) throw std::invalid_argument("zero denominator in: " + s);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer double_factorial_odd(int k) {
  Integer r = 1;
  for (int j = 1; j <= 2 * k + 1; j += 2) r *= j;
  return r;
}

Rational binomial(const Rational& a, unsigned k) {
  Rational r = 1;
  for (unsigned i = 0; i < k; ++i) r *= (a - i) / Rational(i + 1);
  return r;
}

std::vector<Integer> divisors(const Integer& n) {
  if (n == 0) throw std::domain_error("divisors of zero");
  Integer m = abs(n);
  std::vector<std::pair<Integer, unsigned>> primes;
  Integer p = 2;
  while (p * p <= m) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) primes.emplace_back(p, e);
    p += (p == 2) ? 1 : 2;
  }
  if (m > 1) primes.emplace_back(m, 1);
  std::vector<Integer> out{1};
  for (auto& [q, e] : primes) {
    std::size_t sz = out.size();
    Integer pw = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pw);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace toprec
