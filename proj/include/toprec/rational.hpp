#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace toprec {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input
// or zero denominator.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

Integer factorial(unsigned n);
// (2k+1)!! = 1*3*...*(2k+1); double_factorial_odd(-1) = 1.
Integer double_factorial_odd(int k);
Rational binomial(const Rational& a, unsigned k);

// Positive divisors of |n|; n != 0.
std::vector<Integer> divisors(const Integer& n);

}  // namespace toprec
