#ifndef MAHLER_SYSTEM_HPP
#define MAHLER_SYSTEM_HPP

// Functional-equation systems and their power-series expansions.
//
// A system couples two series F, G by a pair of cleared equations over Z[z]:
//   P(z) F(z^d) = P11(z) F(z) + P12(z) G(z) + P10(z)
//   P(z) G(z^d) = P21(z) F(z) + P22(z) G(z) + P20(z)
// with P != 0 and P11*P22 - P12*P21 != 0. delta is 1 when the pair carries an
// inhomogeneous part that the certificate layer must track and 0 otherwise.
//
// Expansion recovers the coefficients of F and G from finitely many seeds.
// The generic scheme extracts (f_n, g_n) from the two equations read at
// shifted indices; when that 2x2 extraction is singular but the first
// equation just says G = F(z^d), the pair collapses to one scalar equation
//   P(z) F(z^{d^2}) = P21(z) F(z) + P22(z) F(z^d)
// which is solved for f_n at the valuation of P21 instead.

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mahler/polynomial.hpp"
#include "mahler/rational.hpp"
#include "mahler/series.hpp"

namespace mahler {

enum class SeriesBoundKind {
  kConstantOne,   // |f_n|, |g_n| <= 1
  kLinearPlusOne, // <= n + 1
  kLogRadix,      // <= 2 + ceil(log_radix(max(n,1)))
};

struct CoefficientBoundSpec {
  SeriesBoundKind kind = SeriesBoundKind::kConstantOne;
  long radix = 3;

  Rational bound(long n) const {
    switch (kind) {
      case SeriesBoundKind::kConstantOne:
        return Rational(1);
      case SeriesBoundKind::kLinearPlusOne:
        return Rational(n + 1);
      case SeriesBoundKind::kLogRadix: {
        long v = 2, p = 1;
        while (p < std::max(n, 1L)) {
          p *= radix;
          ++v;
        }
        return Rational(v);
      }
    }
    throw std::logic_error("coefficient bound: bad kind");
  }

  // Slope beta with bound(n) <= beta * n for every n >= 1; used by the
  // geometric-tail majorant in the witness layer.
  Rational linear_slope() const {
    switch (kind) {
      case SeriesBoundKind::kConstantOne:
        return Rational(1);
      case SeriesBoundKind::kLinearPlusOne:
        return Rational(2);
      case SeriesBoundKind::kLogRadix:
        return Rational(3);
    }
    throw std::logic_error("coefficient bound: bad kind");
  }
};

struct MahlerSystem {
  std::string name;
  long d = 2;     // substitution exponent, >= 2
  int delta = 0;  // 1 when the system is inhomogeneous in the tracked sense
  IntPolynomial P, P11, P12, P21, P22, P10, P20;
  std::vector<Rational> f_seeds, g_seeds;
  CoefficientBoundSpec coeff_bound;
  bool has_coeff_bound = false;

  IntPolynomial pair_determinant() const { return P11 * P22 - P12 * P21; }

  void validate() const {
    if (d < 2) throw std::invalid_argument("system " + name + ": d must be >= 2");
    if (delta != 0 && delta != 1)
      throw std::invalid_argument("system " + name + ": delta must be 0 or 1");
    if (P.is_zero()) throw std::invalid_argument("system " + name + ": P is zero");
    if (pair_determinant().is_zero())
      throw std::invalid_argument("system " + name + ": singular coefficient pair");
    if (f_seeds.empty() || g_seeds.empty())
      throw std::invalid_argument("system " + name + ": missing seeds");
  }
};

struct SeriesPair {
  TruncatedSeries f, g;
};

// Phi(z) = (P11 P22 - P12 P21) P: the determinant factor picked up by one
// substitution step of the three-term determinant.
inline IntPolynomial phi(const MahlerSystem& sys) { return sys.pair_determinant() * sys.P; }

// Coefficient-wise max of |P11|,|P12|,|P21|,|P22|: majorant used by the
// height/degree growth bounds.
inline IntPolynomial ptilde(const MahlerSystem& sys) {
  long deg = std::max(std::max(sys.P11.degree(), sys.P12.degree()),
                      std::max(sys.P21.degree(), sys.P22.degree()));
  std::vector<BigInt> v(static_cast<std::size_t>(deg) + 1, BigInt(0));
  for (long i = 0; i <= deg; ++i) {
    BigInt m(0);
    for (const IntPolynomial* p : {&sys.P11, &sys.P12, &sys.P21, &sys.P22}) {
      BigInt a = (*p)[i] < 0 ? BigInt(-(*p)[i]) : (*p)[i];
      if (a > m) m = a;
    }
    v[static_cast<std::size_t>(i)] = m;
  }
  return IntPolynomial(std::move(v));
}

inline Rational coefficient_bound(const MahlerSystem& sys, long n) {
  if (!sys.has_coeff_bound)
    throw std::invalid_argument("system " + sys.name + ": coefficient_bound missing");
  if (n < 0) throw std::invalid_argument("coefficient_bound: negative index");
  return sys.coeff_bound.bound(n);
}

namespace detail {

// Valuation of the lower of the two valuations among nonzero entries;
// returns -1 when both are zero.
inline long row_valuation(const IntPolynomial& a, const IntPolynomial& b) {
  long va = a.ord(), vb = b.ord();
  if (va < 0) return vb;
  if (vb < 0) return va;
  return std::min(va, vb);
}

// f^(d) coefficient lookup: coefficient of z^i in F(z^d) given coefficients
// of F below `known`. Indices at or past `known` must not be requested.
inline Rational stretched(const std::vector<Rational>& f, long i, long d, long known) {
  if (i < 0 || i % d != 0) return Rational(0);
  long j = i / d;
  if (j >= known) throw std::logic_error("expansion: coefficient not yet available");
  return f[static_cast<std::size_t>(j)];
}

struct CoupledScheme {
  long s1 = 0, s2 = 0;
  Rational m00, m01, m10, m11, det;  // extraction matrix at (s1, s2)
};

inline CoupledScheme coupled_scheme(const MahlerSystem& sys) {
  CoupledScheme c;
  c.s1 = row_valuation(sys.P11, sys.P12);
  c.s2 = row_valuation(sys.P21, sys.P22);
  if (c.s1 < 0 || c.s2 < 0) {
    c.det = 0;
    return c;
  }
  c.m00 = Rational(sys.P11[c.s1]);
  c.m01 = Rational(sys.P12[c.s1]);
  c.m10 = Rational(sys.P21[c.s2]);
  c.m11 = Rational(sys.P22[c.s2]);
  c.det = c.m00 * c.m11 - c.m01 * c.m10;
  return c;
}

// The scalar fallback applies when equation one states G = F(z^d) verbatim.
inline bool scalar_shape(const MahlerSystem& sys) {
  return sys.P11.is_zero() && sys.P10.is_zero() && sys.P12 == sys.P &&
         !sys.P21.is_zero();
}

inline long ceil_div_pos(long a, long b) { return a >= 0 ? (a + b - 1) / b : 0; }

}  // namespace detail

// Expand F and G through order n_max. Throws "under-determined system" when
// neither extraction scheme determines the next coefficient uniquely.
inline SeriesPair expand_pair(const MahlerSystem& sys, long n_max) {
  sys.validate();
  if (n_max < 0) throw std::invalid_argument("expand_pair: negative order");
  const long d = sys.d;
  const long n_size = n_max + 1;
  std::vector<Rational> f(static_cast<std::size_t>(n_size), Rational(0));
  std::vector<Rational> g(static_cast<std::size_t>(n_size), Rational(0));

  detail::CoupledScheme cs = detail::coupled_scheme(sys);
  if (cs.det != 0) {
    const long ord_p = sys.P.ord();
    // The extraction at index n reads stretched coefficients up to
    // (n + s - ord_p)/d, which stays below n once n > (s - ord_p)/(d-1).
    long n_start = std::max(1L, std::max(detail::ceil_div_pos(cs.s1 - ord_p + 1, d - 1),
                                         detail::ceil_div_pos(cs.s2 - ord_p + 1, d - 1)));
    if (static_cast<long>(sys.f_seeds.size()) < n_start ||
        static_cast<long>(sys.g_seeds.size()) < n_start)
      throw std::runtime_error("under-determined system: not enough seeds for " + sys.name);
    for (long n = 0; n < std::min(n_start, n_size); ++n) {
      f[static_cast<std::size_t>(n)] = sys.f_seeds[static_cast<std::size_t>(n)];
      g[static_cast<std::size_t>(n)] = sys.g_seeds[static_cast<std::size_t>(n)];
    }
    for (long n = n_start; n < n_size; ++n) {
      // Equation rows read at i1 = n + s1 and i2 = n + s2.
      long i1 = n + cs.s1, i2 = n + cs.s2;
      Rational u1(0), u2(0);
      for (long j = sys.P.ord(); j <= sys.P.degree(); ++j) {
        if (sys.P[j] == 0) continue;
        u1 += Rational(sys.P[j]) * detail::stretched(f, i1 - j, d, n);
        u2 += Rational(sys.P[j]) * detail::stretched(g, i2 - j, d, n);
      }
      auto back = [&](const IntPolynomial& p, const std::vector<Rational>& h, long i) {
        Rational acc(0);
        for (long j = 0; j <= p.degree(); ++j) {
          if (p[j] == 0) continue;
          long idx = i - j;
          if (idx < 0 || idx >= n) continue;  // index n enters via the matrix
          acc += Rational(p[j]) * h[static_cast<std::size_t>(idx)];
        }
        return acc;
      };
      u1 -= back(sys.P11, f, i1) + back(sys.P12, g, i1) + Rational(sys.P10[i1]);
      u2 -= back(sys.P21, f, i2) + back(sys.P22, g, i2) + Rational(sys.P20[i2]);
      Rational fn = (u1 * cs.m11 - u2 * cs.m01) / cs.det;
      Rational gn = (cs.m00 * u2 - cs.m10 * u1) / cs.det;
      f[static_cast<std::size_t>(n)] = fn;
      g[static_cast<std::size_t>(n)] = gn;
    }
    return SeriesPair{TruncatedSeries(std::move(f)), TruncatedSeries(std::move(g))};
  }

  if (detail::scalar_shape(sys)) {
    // P(z) F(z^{d^2}) = P21 F + P22 F(z^d); solve at the valuation of P21.
    const long s = sys.P21.ord();
    const long ord_p = sys.P.ord();
    const long v22 = sys.P22.ord() < 0 ? 0 : sys.P22.ord();
    long n_start = std::max(1L, std::max(detail::ceil_div_pos(s - v22 + 1, d - 1),
                                         detail::ceil_div_pos(s - ord_p + 1, d * d - 1)));
    if (static_cast<long>(sys.f_seeds.size()) < n_start)
      throw std::runtime_error("under-determined system: not enough seeds for " + sys.name);
    for (long n = 0; n < std::min(n_start, n_size); ++n)
      f[static_cast<std::size_t>(n)] = sys.f_seeds[static_cast<std::size_t>(n)];
    const Rational lead(sys.P21[s]);
    for (long n = n_start; n < n_size; ++n) {
      long i = n + s;
      Rational acc(0);
      for (long j = sys.P.ord(); j <= sys.P.degree(); ++j)
        if (sys.P[j] != 0) acc += Rational(sys.P[j]) * detail::stretched(f, i - j, d * d, n);
      for (long j = 0; j <= sys.P22.degree(); ++j)
        if (sys.P22[j] != 0) acc -= Rational(sys.P22[j]) * detail::stretched(f, i - j, d, n);
      for (long j = s + 1; j <= sys.P21.degree(); ++j) {
        long idx = i - j;
        if (sys.P21[j] == 0 || idx < 0 || idx >= n) continue;
        acc -= Rational(sys.P21[j]) * f[static_cast<std::size_t>(idx)];
      }
      f[static_cast<std::size_t>(n)] = acc / lead;
    }
    for (long n = 0; n < n_size; ++n)
      g[static_cast<std::size_t>(n)] = (n % d == 0) ? f[static_cast<std::size_t>(n / d)] : Rational(0);
    if (!sys.g_seeds.empty() && sys.g_seeds[0] != g[0])
      throw std::runtime_error("under-determined system: inconsistent seeds for " + sys.name);
    return SeriesPair{TruncatedSeries(std::move(f)), TruncatedSeries(std::move(g))};
  }

  throw std::runtime_error("under-determined system: " + sys.name);
}

// Residuals of the two defining equations over the known prefix; both are
// identically zero for a correct expansion.
inline std::pair<TruncatedSeries, TruncatedSeries> equation_residual(const MahlerSystem& sys,
                                                                     const SeriesPair& pair) {
  TruncatedSeries fd = pair.f.compose_power(sys.d).truncated(pair.f.truncation_order());
  TruncatedSeries gd = pair.g.compose_power(sys.d).truncated(pair.g.truncation_order());
  long n = std::min(pair.f.truncation_order(), pair.g.truncation_order());
  TruncatedSeries r1 = fd.mul_poly(sys.P).truncated(n) - pair.f.mul_poly(sys.P11).truncated(n) -
                       pair.g.mul_poly(sys.P12).truncated(n) -
                       TruncatedSeries::from_polynomial(sys.P10, n);
  TruncatedSeries r2 = gd.mul_poly(sys.P).truncated(n) - pair.f.mul_poly(sys.P21).truncated(n) -
                       pair.g.mul_poly(sys.P22).truncated(n) -
                       TruncatedSeries::from_polynomial(sys.P20, n);
  return {r1, r2};
}

namespace detail {

inline IntPolynomial ipoly(std::vector<long> v) {
  std::vector<BigInt> c;
  c.reserve(v.size());
  for (long x : v) c.emplace_back(x);
  return IntPolynomial(std::move(c));
}

inline std::map<std::string, MahlerSystem> make_builtins() {
  std::map<std::string, MahlerSystem> m;

  {
    // F(z) = prod_{j>=0} (1 - z^{2^j}), G = F^2.
    MahlerSystem s;
    s.name = "thue";
    s.d = 2;
    s.delta = 0;
    s.P = ipoly({1, -2, 1});
    s.P11 = ipoly({1, -1});
    s.P22 = ipoly({1});
    s.f_seeds = {Rational(1)};
    s.g_seeds = {Rational(1)};
    s.coeff_bound = {SeriesBoundKind::kLinearPlusOne, 0};
    s.has_coeff_bound = true;
    m[s.name] = s;
  }
  {
    MahlerSystem s;
    s.name = "stern";
    s.d = 2;
    s.delta = 0;
    s.P = ipoly({1, 1, 1});
    s.P11 = ipoly({1});
    s.P22 = ipoly({-1});
    s.P20 = ipoly({2});
    s.f_seeds = {Rational(1)};
    s.g_seeds = {Rational(1)};
    s.coeff_bound = {SeriesBoundKind::kLinearPlusOne, 0};
    s.has_coeff_bound = true;
    m[s.name] = s;
  }
  {
    MahlerSystem s;
    s.name = "lambert3";
    s.d = 3;
    s.delta = 0;
    s.P = ipoly({1, 0, -1});
    s.P11 = ipoly({1, 0, -1});
    s.P22 = ipoly({1, 0, -1});
    s.P10 = ipoly({0, -1, -1});
    s.P20 = ipoly({0, -1, 1});
    s.f_seeds = {Rational(0)};
    s.g_seeds = {Rational(0)};
    s.coeff_bound = {SeriesBoundKind::kLogRadix, 3};
    s.has_coeff_bound = true;
    m[s.name] = s;
  }
  {
    MahlerSystem s;
    s.name = "rudin";
    s.d = 2;
    s.delta = 1;
    s.P = ipoly({0, 2});
    s.P11 = ipoly({0, 1});
    s.P12 = ipoly({0, 1});
    s.P21 = ipoly({1});
    s.P22 = ipoly({-1});
    s.f_seeds = {Rational(1)};
    s.g_seeds = {Rational(1)};
    s.coeff_bound = {SeriesBoundKind::kConstantOne, 0};
    s.has_coeff_bound = true;
    m[s.name] = s;
  }
  {
    MahlerSystem s;
    s.name = "dilcher";
    s.d = 4;
    s.delta = 1;
    s.P = ipoly({1});
    s.P12 = ipoly({1});
    s.P21 = ipoly({0, -1});
    s.P22 = ipoly({1, 1, 1});
    s.f_seeds = {Rational(1)};
    s.g_seeds = {Rational(1)};
    s.coeff_bound = {SeriesBoundKind::kConstantOne, 0};
    s.has_coeff_bound = true;
    m[s.name] = s;
  }

  for (auto& [name, sys] : m) sys.validate();
  return m;
}

}  // namespace detail

inline const std::map<std::string, MahlerSystem>& builtin_systems() {
  static const std::map<std::string, MahlerSystem> kSystems = detail::make_builtins();
  return kSystems;
}

inline const MahlerSystem& builtin(const std::string& name) {
  const auto& m = builtin_systems();
  auto it = m.find(name);
  if (it == m.end()) {
    std::string names;
    for (const auto& [n, s] : m) names += (names.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown system '" + name + "' (have: " + names + ")");
  }
  return it->second;
}

}  // namespace mahler

#endif
