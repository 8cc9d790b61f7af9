#include "tdesign/rational.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "tdesign/errors.hpp"

namespace tdesign {

BigInt binomial(const BigInt& n, unsigned long k) {
  BigInt out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k);
  return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt pow2(unsigned long exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, exponent);
  return out;
}

BigInt power(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational out;
  if (out.set_str(text, 10) != 0) {
    throw InvalidArgument("not a rational number: '" + text + "'");
  }
  require(out.get_den() != 0, "zero denominator in '" + text + "'");
  out.canonicalize();
  return out;
}

// Truncates toward zero (GMP semantics), so the result may be 1 ulp off the
// nearest double.
double to_double(const Rational& value) { return mpq_get_d(value.get_mpq_t()); }

double to_double(const BigInt& value) { return mpz_get_d(value.get_mpz_t()); }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buffer{};
  auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buffer.data(), end);
}

}  // namespace tdesign
