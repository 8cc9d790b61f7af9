#pragma once

#include <gmpxx.h>

#include <string>

namespace tdesign {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt binomial(const BigInt& n, unsigned long k);
BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);
BigInt pow2(unsigned long exponent);
BigInt power(const BigInt& base, unsigned long exponent);

/// "num/den", or just "num" for integers.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);
Rational parse_rational(const std::string& text);

double to_double(const Rational& value);
double to_double(const BigInt& value);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace tdesign
