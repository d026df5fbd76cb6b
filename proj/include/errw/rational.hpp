#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace errw {

/// Exact rational number. Always kept in canonical form (reduced, positive
/// denominator) by the helpers below.
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Parses "p/q", "p" or a finite decimal such as "0.25".
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

inline double to_double(const Rational& q) { return q.get_d(); }

/// 2^-k as an exact rational.
Rational inverse_power_of_two(unsigned k);

}  // namespace errw
