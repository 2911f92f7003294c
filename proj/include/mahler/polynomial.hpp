#ifndef MAHLER_POLYNOMIAL_HPP
#define MAHLER_POLYNOMIAL_HPP

// Dense univariate polynomials over an exact coefficient ring.
// Invariant: the coefficient vector carries no trailing zeros, so the zero
// polynomial is the empty vector and degree() is -1 for it.

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mahler/rational.hpp"

namespace mahler {

template <class T>
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<T> coeffs) : coef_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }

  static Polynomial monomial(const T& c, long exponent) {
    if (exponent < 0) throw std::invalid_argument("monomial: negative exponent");
    std::vector<T> v(static_cast<std::size_t>(exponent) + 1, T(0));
    v.back() = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return coef_.empty(); }

  long degree() const { return static_cast<long>(coef_.size()) - 1; }

  // Index of the lowest nonzero coefficient, -1 for the zero polynomial.
  long ord() const {
    for (std::size_t i = 0; i < coef_.size(); ++i)
      if (coef_[i] != 0) return static_cast<long>(i);
    return -1;
  }

  const T& operator[](long i) const {
    static const T kZero{0};
    if (i < 0 || i >= static_cast<long>(coef_.size())) return kZero;
    return coef_[static_cast<std::size_t>(i)];
  }

  const std::vector<T>& coeffs() const { return coef_; }

  bool operator==(const Polynomial& o) const { return coef_ == o.coef_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator-() const {
    std::vector<T> v(coef_);
    for (T& c : v) c = -c;
    return Polynomial(std::move(v));
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<T> v(std::max(coef_.size(), o.coef_.size()), T(0));
    for (std::size_t i = 0; i < coef_.size(); ++i) v[i] = coef_[i];
    for (std::size_t i = 0; i < o.coef_.size(); ++i) v[i] += o.coef_[i];
    return Polynomial(std::move(v));
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<T> v(coef_.size() + o.coef_.size() - 1, T(0));
    for (std::size_t i = 0; i < coef_.size(); ++i) {
      if (coef_[i] == 0) continue;
      for (std::size_t j = 0; j < o.coef_.size(); ++j) v[i + j] += coef_[i] * o.coef_[j];
    }
    return Polynomial(std::move(v));
  }

  Polynomial scaled(const T& s) const {
    std::vector<T> v(coef_);
    for (T& c : v) c *= s;
    return Polynomial(std::move(v));
  }

  // p(z) -> p(z^d)
  Polynomial compose_power(long d) const {
    if (d < 1) throw std::invalid_argument("compose_power: d must be >= 1");
    if (is_zero() || d == 1) return *this;
    std::vector<T> v(static_cast<std::size_t>(degree()) * d + 1, T(0));
    for (std::size_t i = 0; i < coef_.size(); ++i) v[i * d] = coef_[i];
    return Polynomial(std::move(v));
  }

  // Divide by z^k; every coefficient below k must be zero.
  Polynomial shift_down(long k) const {
    if (k == 0) return *this;
    if (is_zero()) return *this;
    if (k < 0 || ord() < k) throw std::invalid_argument("shift_down: order too small");
    return Polynomial(std::vector<T>(coef_.begin() + k, coef_.end()));
  }

  template <class R>
  R eval(const R& x) const {
    R acc(0);
    for (long i = degree(); i >= 0; --i) {
      acc *= x;
      acc += coef_[static_cast<std::size_t>(i)];
    }
    return acc;
  }

  std::string display(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string out;
    for (long i = degree(); i >= 0; --i) {
      const T& c = coef_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      std::string mag = to_string(c < 0 ? T(-c) : c);
      if (!out.empty())
        out += (c < 0) ? " - " : " + ";
      else if (c < 0)
        out += "-";
      bool unit = (mag == "1");
      if (i == 0)
        out += mag;
      else {
        out += unit ? "" : mag + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coef_.empty() && coef_.back() == 0) coef_.pop_back();
  }

  std::vector<T> coef_;
};

using IntPolynomial = Polynomial<BigInt>;
using RatPolynomial = Polynomial<Rational>;

inline RatPolynomial lift(const IntPolynomial& p) {
  std::vector<Rational> v;
  v.reserve(p.coeffs().size());
  for (const BigInt& c : p.coeffs()) v.emplace_back(c);
  return RatPolynomial(std::move(v));
}

struct OrdPrimitive {
  long ord = 0;            // exponent of the z-power factor
  BigInt content{0};       // signed: primitive part has positive lowest coefficient
  IntPolynomial primitive; // p == content * z^ord * primitive
};

inline OrdPrimitive ord_and_primitive(const IntPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("ord_and_primitive: zero polynomial");
  OrdPrimitive r;
  r.ord = p.ord();
  IntPolynomial shifted = p.shift_down(r.ord);
  BigInt g{0};
  for (const BigInt& c : shifted.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (shifted[0] < 0) g = -g;
  std::vector<BigInt> v;
  v.reserve(shifted.coeffs().size());
  for (const BigInt& c : shifted.coeffs()) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    v.push_back(q);
  }
  r.content = g;
  r.primitive = IntPolynomial(std::move(v));
  return r;
}

// Lower bound on |z0| over nonzero roots z0, via the reciprocal Cauchy bound
// applied to the primitive part q = p / z^ord(p):
//   every root of q satisfies |z0| >= |q_0| / (|q_0| + max_{j>=1} |q_j|).
// Returns nullopt when q is constant (no nonzero roots at all).
inline std::optional<Rational> nonzero_root_modulus_lower_bound(const IntPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("root bound: zero polynomial");
  IntPolynomial q = p.shift_down(p.ord());
  if (q.degree() == 0) return std::nullopt;
  BigInt a0 = q[0] < 0 ? BigInt(-q[0]) : q[0];
  BigInt top{0};
  for (long j = 1; j <= q.degree(); ++j) {
    BigInt m = q[j] < 0 ? BigInt(-q[j]) : q[j];
    if (m > top) top = m;
  }
  return make_rational(a0, a0 + top);
}

// Cofactor expansion along the first row.
template <class T>
Polynomial<T> det3(const std::array<std::array<Polynomial<T>, 3>, 3>& m) {
  Polynomial<T> m00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
  Polynomial<T> m01 = m[1][0] * m[2][2] - m[1][2] * m[2][0];
  Polynomial<T> m02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
  return m[0][0] * m00 - m[0][1] * m01 + m[0][2] * m02;
}

}  // namespace mahler

#endif
