#include "errw/rational.hpp"

#include <stdexcept>

namespace errw {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  Rational q{BigInt{std::to_string(num)}, BigInt{std::to_string(den)}};
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(text, 10) != 0) {
      throw std::invalid_argument("malformed rational literal '" + text + "'");
    }
    if (q.get_den() == 0) {
      throw std::invalid_argument("rational with zero denominator");
    }
    q.canonicalize();
    return q;
  }
  // Decimal: digits before and after the point, optional sign.
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  if (digits.empty() || digits == "-" || digits == "+") {
    throw std::invalid_argument("malformed decimal literal '" + text + "'");
  }
  BigInt num;
  if (num.set_str(digits, 10) != 0) {
    throw std::invalid_argument("malformed decimal literal '" + text + "'");
  }
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
  Rational q{num, den};
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::string to_string(const BigInt& z) { return z.get_str(10); }

Rational inverse_power_of_two(unsigned k) {
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
  Rational q{BigInt{1}, den};
  q.canonicalize();
  return q;
}

}  // namespace errw
