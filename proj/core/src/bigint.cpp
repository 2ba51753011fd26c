#include "chromathresh/bigint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace chromathresh {

BigInt factorial(std::uint64_t n) {
    BigInt out = 1;
    for (std::uint64_t i = 2; i <= n; ++i) out *= i;
    return out;
}

BigInt falling_factorial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    BigInt out = 1;
    for (std::uint64_t i = 0; i < k; ++i) out *= (n - i);
    return out;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt out = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        out *= (n - k + i);
        out /= i; // exact at every step: out is C(n-k+i, i)
    }
    return out;
}

BigInt pow_big(const BigInt& base, std::uint64_t exp) {
    BigInt out = 1;
    BigInt b = base;
    while (exp > 0) {
        if (exp & 1) out *= b;
        b *= b;
        exp >>= 1;
    }
    return out;
}

BigInt iroot(const BigInt& v, std::uint64_t k) {
    if (v < 0) throw std::invalid_argument("iroot: negative value");
    if (k == 0) throw std::invalid_argument("iroot: zeroth root");
    if (v == 0 || v == 1 || k == 1) return v;

    // Newton iteration seeded from the bit length; monotone decreasing
    // once above the root, so terminate when it stops decreasing.
    const std::uint64_t bits = boost::multiprecision::msb(v) + 1;
    BigInt x = BigInt(1) << (bits / k + 1);
    for (;;) {
        BigInt xk1 = pow_big(x, k - 1);
        BigInt next = ((k - 1) * x + v / xk1) / k;
        if (next >= x) break;
        x = next;
    }
    while (pow_big(x, k) > v) --x;
    while (pow_big(x + 1, k) <= v) ++x;
    return x;
}

double log_big(const BigInt& v) {
    if (v <= 0) {
        if (v == 0) return -std::numeric_limits<double>::infinity();
        throw std::invalid_argument("log_big: negative value");
    }
    const std::uint64_t bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 900) return std::log(v.convert_to<double>());
    const std::uint64_t shift = bits - 64;
    const double mant = BigInt(v >> shift).convert_to<double>();
    return std::log(mant) + static_cast<double>(shift) * 0.6931471805599453;
}

double log_big(const BigRat& v) {
    return log_big(boost::multiprecision::numerator(v)) -
           log_big(boost::multiprecision::denominator(v));
}

std::string to_fraction_string(const BigRat& v) {
    const BigInt num = boost::multiprecision::numerator(v);
    const BigInt den = boost::multiprecision::denominator(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::optional<BigRat> parse_fraction(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return BigRat(BigInt(s));
        const BigInt num(s.substr(0, slash));
        const BigInt den(s.substr(slash + 1));
        if (den == 0) return std::nullopt;
        return BigRat(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace chromathresh
