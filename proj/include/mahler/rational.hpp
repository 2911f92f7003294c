#ifndef MAHLER_RATIONAL_HPP
#define MAHLER_RATIONAL_HPP

// Exact scalar layer. BigInt/Rational are GMP types; every Rational produced
// through the helpers below is canonical (reduced, positive denominator),
// and GMP arithmetic preserves that form.

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace mahler {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline BigInt parse_bigint(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_bigint: empty string");
  mpz_class v;
  if (v.set_str(s, 10) != 0)
    throw std::invalid_argument("parse_bigint: bad integer '" + s + "'");
  return v;
}

// Accepts "p" and "p/q".
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_bigint(s));
  BigInt num = parse_bigint(s.substr(0, slash));
  BigInt den = parse_bigint(s.substr(slash + 1));
  return make_rational(num, den);
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline BigInt pow_bigint(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Negative exponents allowed for nonzero base.
inline Rational pow_rational(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0 && e < 0) throw std::invalid_argument("pow_rational: 0^negative");
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  BigInt num = pow_bigint(base.get_num(), a);
  BigInt den = pow_bigint(base.get_den(), a);
  return e < 0 ? make_rational(den, num) : make_rational(num, den);
}

inline Rational abs_rational(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// log2 of |q| as a double, for display only; exact comparisons never use this.
inline double log2_approx(const Rational& q) {
  if (q == 0) throw std::invalid_argument("log2_approx: zero");
  signed long en, ed;
  double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
  return (std::log2(std::abs(mn)) + static_cast<double>(en)) -
         (std::log2(std::abs(md)) + static_cast<double>(ed));
}

}  // namespace mahler

#endif
