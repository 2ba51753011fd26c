#pragma once

// Exact arbitrary-precision integers/rationals plus the handful of
// combinatorial helpers (factorials, falling factorials, binomials,
// integer roots) used by the oracle and the moment formulas.

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace chromathresh {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt factorial(std::uint64_t n);
BigInt binomial(std::uint64_t n, std::uint64_t k);

// n * (n-1) * ... * (n-k+1); returns 1 for k = 0, 0 when k > n.
BigInt falling_factorial(std::uint64_t n, std::uint64_t k);

BigInt pow_big(const BigInt& base, std::uint64_t exp);

// Largest x with x^k <= v. Requires v >= 0 and k >= 1.
BigInt iroot(const BigInt& v, std::uint64_t k);

// Natural log of a positive big integer, accurate to ~1 ulp of double.
double log_big(const BigInt& v);
double log_big(const BigRat& v);

// Canonical reduced-fraction string: "7/8", or plain "3" when integral.
std::string to_fraction_string(const BigRat& v);
std::optional<BigRat> parse_fraction(const std::string& s);

} // namespace chromathresh
