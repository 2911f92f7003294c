#ifndef MAHLER_SERIES_HPP
#define MAHLER_SERIES_HPP

// Truncated power series over Rational. A series knows its coefficients
// exactly through truncation_order(); operations return the largest order on
// which the result is still exact.

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "mahler/polynomial.hpp"
#include "mahler/rational.hpp"

namespace mahler {

class TruncatedSeries {
 public:
  TruncatedSeries() : coef_(1, Rational(0)) {}

  explicit TruncatedSeries(long order) {
    if (order < 0) throw std::invalid_argument("series: negative order");
    coef_.assign(static_cast<std::size_t>(order) + 1, Rational(0));
  }

  explicit TruncatedSeries(std::vector<Rational> coeffs) : coef_(std::move(coeffs)) {
    if (coef_.empty()) throw std::invalid_argument("series: empty coefficient vector");
  }

  template <class T>
  static TruncatedSeries from_polynomial(const Polynomial<T>& p, long order) {
    TruncatedSeries s(order);
    for (long i = 0; i <= std::min(order, p.degree()); ++i) s.at(i) = Rational(p[i]);
    if (p.degree() > order)
      throw std::invalid_argument("series: polynomial degree exceeds order");
    return s;
  }

  long truncation_order() const { return static_cast<long>(coef_.size()) - 1; }

  const Rational& operator[](long n) const {
    check(n);
    return coef_[static_cast<std::size_t>(n)];
  }

  Rational& at(long n) {
    check(n);
    return coef_[static_cast<std::size_t>(n)];
  }

  const std::vector<Rational>& coeffs() const { return coef_; }

  // Index of the first nonzero coefficient, or -1 when the whole known
  // prefix vanishes (the true order is then beyond the truncation).
  long ord() const {
    for (std::size_t i = 0; i < coef_.size(); ++i)
      if (coef_[i] != 0) return static_cast<long>(i);
    return -1;
  }

  bool is_zero_prefix() const { return ord() == -1; }

  TruncatedSeries truncated(long order) const {
    if (order > truncation_order())
      throw std::invalid_argument("series: cannot extend truncation");
    return TruncatedSeries(
        std::vector<Rational>(coef_.begin(), coef_.begin() + order + 1));
  }

  TruncatedSeries operator+(const TruncatedSeries& o) const {
    long n = std::min(truncation_order(), o.truncation_order());
    TruncatedSeries r(n);
    for (long i = 0; i <= n; ++i) r.at(i) = (*this)[i] + o[i];
    return r;
  }

  TruncatedSeries operator-(const TruncatedSeries& o) const {
    long n = std::min(truncation_order(), o.truncation_order());
    TruncatedSeries r(n);
    for (long i = 0; i <= n; ++i) r.at(i) = (*this)[i] - o[i];
    return r;
  }

  TruncatedSeries operator*(const TruncatedSeries& o) const {
    long n = std::min(truncation_order(), o.truncation_order());
    TruncatedSeries r(n);
    for (long i = 0; i <= n; ++i) {
      if ((*this)[i] == 0) continue;
      for (long j = 0; i + j <= n; ++j) {
        if (o[j] == 0) continue;
        r.at(i + j) += (*this)[i] * o[j];
      }
    }
    return r;
  }

  // Polynomial factors are exact, so the truncation order is preserved.
  template <class T>
  TruncatedSeries mul_poly(const Polynomial<T>& p) const {
    long n = truncation_order();
    TruncatedSeries r(n);
    for (long j = 0; j <= p.degree(); ++j) {
      if (p[j] == 0) continue;
      for (long i = 0; i + j <= n; ++i) r.at(i + j) += (*this)[i] * p[j];
    }
    return r;
  }

  // s(z) -> s(z^d). Exact through d*N + d - 1: the first unknown input
  // coefficient (index N+1) first appears at z^(d(N+1)).
  TruncatedSeries compose_power(long d) const {
    if (d < 1) throw std::invalid_argument("compose_power: d must be >= 1");
    if (d == 1) return *this;
    long n = truncation_order();
    TruncatedSeries r(d * n + d - 1);
    for (long i = 0; i <= n; ++i) r.at(i * d) = (*this)[i];
    return r;
  }

  bool operator==(const TruncatedSeries& o) const { return coef_ == o.coef_; }

 private:
  void check(long n) const {
    if (n < 0 || n >= static_cast<long>(coef_.size()))
      throw std::out_of_range("series: index beyond truncation");
  }

  std::vector<Rational> coef_;
};

}  // namespace mahler

#endif
