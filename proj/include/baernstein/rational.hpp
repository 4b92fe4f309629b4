#ifndef BAERNSTEIN_RATIONAL_HPP
#define BAERNSTEIN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace baernstein {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an input violates a precondition, a guard, or a validated
/// invariant (maps to CLI exit code 1).
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

inline Integer numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Integer denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

/// Formats a rational as "p/q" (always with an explicit denominator,
/// so "4/1" rather than "4"; stable for JSON round-trips).
inline std::string format_rational(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "p/q" or a plain integer "p". Rejects zero denominators.
inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw domain_error("rational with zero denominator: " + text);
    return Rational(num, den);
  } catch (const std::exception& e) {
    throw domain_error("bad rational literal '" + text + "': " + e.what());
  }
}

/// Floor of sqrt(n) for n >= 0.
inline Integer isqrt_floor(const Integer& n) {
  if (n < 0) throw domain_error("isqrt of negative integer");
  if (n == 0) return 0;
  Integer x = Integer(1) << ((boost::multiprecision::msb(n) / 2) + 1);
  for (;;) {
    Integer y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

/// Largest rational with denominator 2^prec_bits that is <= sqrt(r).
inline Rational sqrt_lower(const Rational& r, unsigned prec_bits = 64) {
  if (r < 0) throw domain_error("sqrt of negative rational");
  // sqrt(p/q) >= floor(sqrt(p*q*4^b)) / (q*2^b)
  Integer p = numerator(r), q = denominator(r);
  Integer scale = Integer(1) << prec_bits;
  Integer root = isqrt_floor(p * q * scale * scale);
  return Rational(root, q * scale);
}

/// A rational >= sqrt(r), within 2^-prec_bits of it.
inline Rational sqrt_upper(const Rational& r, unsigned prec_bits = 64) {
  if (r < 0) throw domain_error("sqrt of negative rational");
  if (r == 0) return 0;
  Integer p = numerator(r), q = denominator(r);
  Integer scale = Integer(1) << prec_bits;
  Integer root = isqrt_floor(p * q * scale * scale) + 1;
  return Rational(root, q * scale);
}

/// Decimal presentation with the given number of fractional digits,
/// rounded toward zero. Derived data only; exact values travel as "p/q".
inline std::string format_decimal(const Rational& r, unsigned digits = 12) {
  Integer p = numerator(r), q = denominator(r);
  bool neg = p < 0;
  if (neg) p = -p;
  Integer scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  Integer whole = p / q;
  Integer frac = ((p % q) * scale) / q;
  std::string fs = frac.str();
  if (fs.size() < digits) fs = std::string(digits - fs.size(), '0') + fs;
  std::string out = (neg ? "-" : "") + whole.str();
  if (digits > 0) out += "." + fs;
  return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace baernstein

#endif  // BAERNSTEIN_RATIONAL_HPP
