#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nervekit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Validation and precondition failures raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

/// Largest integer not exceeding x.
inline BigInt floor_of(const Rational& x) {
  BigInt num = numerator_of(x);
  BigInt den = denominator_of(x);
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

/// Representative of x modulo 1 in [0, 1).
inline Rational frac(const Rational& x) { return x - Rational(floor_of(x)); }

/// Parses "p/q", "p" or "-p/q". Rejects zero denominators and trailing junk.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw Error("malformed rational '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw Error("malformed rational '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw Error("malformed rational '" + std::string(text) + "'");
    }
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

/// Always "p/q" with q > 0, so integers print as "n/1".
inline std::string to_string(const Rational& x) {
  return numerator_of(x).str() + "/" + denominator_of(x).str();
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Natural logarithm of a positive big integer, accurate to double precision.
inline double log_big(const BigInt& x) {
  if (x <= 0) throw Error("log of non-positive integer");
  std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 62) return std::log(x.convert_to<double>());
  std::size_t shift = bits - 62;
  BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline BigInt pow_big(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

/// Decimal rendering with 15 significant digits, used for every real in reports.
inline std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(15) << x;
  return os.str();
}

}  // namespace nervekit
