#ifndef RTR_RATIONAL_HPP
#define RTR_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rtr {

// Exact arbitrary-precision rational, always canonical (lowest terms,
// positive denominator). GMP-backed.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline Rational rat(long n, long d = 1) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(n, d);
}

// Parses "p/q" or "p". Throws on malformed input or q = 0.
inline Rational parse_rational(const std::string& s) {
  auto is_int = [](const std::string& t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string np = s.substr(0, slash);
  if (!is_int(np) || (slash != std::string::npos && !is_int(s.substr(slash + 1))))
    throw std::invalid_argument("malformed rational: \"" + s + "\"");
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: \"" + s + "\"");
  }
}

inline std::string to_string(const Rational& q) {
  return q.str();
}

// binomial(d, k) for integer d (possibly negative), k >= 0.
inline Rational binomial(long d, long k) {
  Rational b = 1;
  for (long j = 0; j < k; ++j) b *= Rational(d - j, j + 1);
  return b;
}

inline Rational pow_rat(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw std::domain_error("0^negative");
    return 1 / pow_rat(q, -e);
  }
  Rational r = 1, base = q;
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) r *= base;
    if (k > 1) base *= base;
  }
  return r;
}

}  // namespace rtr

#endif
