#ifndef MAHLER_CERTIFICATES_HPP
#define MAHLER_CERTIFICATES_HPP

// Determinant certificates for triples of approximants.
//
// One substitution step maps forms at level m to level m+1:
//   A' = P11 A(z^d) + P21 B(z^d)
//   B' = P12 A(z^d) + P22 B(z^d)
//   C' = P10 A(z^d) + P20 B(z^d) + P C(z^d)
// and the remainder transforms as R' = P R(z^d), so vanishing orders scale
// by d and pick up ord P. The 3x3 determinant of three levelled triples
// gains the fixed factor Phi = (P11 P22 - P12 P21) P per step, which is the
// product identity delta_product_check verifies.
//
// Nonvanishing of the level-0 determinant Delta is decided exactly: Delta is
// an integer polynomial, computed by cofactor expansion, and factored as
// content * z^ord * primitive. The window invariant pins ord Delta between
// o(k1) and the degree budget whenever Delta != 0.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mahler/hermite_pade.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/rational.hpp"
#include "mahler/series.hpp"
#include "mahler/system.hpp"

namespace mahler {

struct FormsAtLevel {
  long k = 0;  // base index of the underlying approximant
  long m = 0;  // substitution level
  IntPolynomial A, B, C;
  TruncatedSeries remainder_prefix;
};

inline FormsAtLevel level0(long k, const ApproxTriple& t) {
  return FormsAtLevel{k, 0, t.A, t.B, t.C, t.remainder_prefix};
}

inline FormsAtLevel recursion_step(const MahlerSystem& sys, const FormsAtLevel& f) {
  FormsAtLevel g;
  g.k = f.k;
  g.m = f.m + 1;
  IntPolynomial Ad = f.A.compose_power(sys.d);
  IntPolynomial Bd = f.B.compose_power(sys.d);
  IntPolynomial Cd = f.C.compose_power(sys.d);
  g.A = sys.P11 * Ad + sys.P21 * Bd;
  g.B = sys.P12 * Ad + sys.P22 * Bd;
  g.C = sys.P10 * Ad + sys.P20 * Bd + sys.P * Cd;
  g.remainder_prefix = f.remainder_prefix.compose_power(sys.d).mul_poly(sys.P);
  return g;
}

inline FormsAtLevel forms_at_level(const MahlerSystem& sys, long k, const ApproxTriple& t,
                                   long m) {
  if (m < 0) throw std::invalid_argument("forms_at_level: negative level");
  FormsAtLevel f = level0(k, t);
  for (long i = 0; i < m; ++i) f = recursion_step(sys, f);
  return f;
}

struct DeterminantCertificate {
  std::array<long, 3> k_vector{};
  IntPolynomial delta0;   // Delta(k, 0, z)
  long o1 = 0;            // vanishing order of the first remainder
  IntPolynomial D;        // delta0 == content * z^o1 * D when delta0 != 0
  BigInt content{0};
  bool nonvanishing = false;
};

// Degree budget sum(d-bar(k_i)) with d-bar = max degree bound of the triple.
inline long degree_budget(const ApproxTriple& t) {
  return std::max(t.degrees.d1, std::max(t.degrees.d2, t.degrees.d3));
}

inline DeterminantCertificate delta0(const std::array<long, 3>& ks, const ApproxTriple& t1,
                                     const ApproxTriple& t2, const ApproxTriple& t3) {
  const ApproxTriple* t[3] = {&t1, &t2, &t3};
  for (int i = 0; i + 1 < 3; ++i) {
    if (degree_budget(*t[i]) > degree_budget(*t[i + 1]))
      throw std::invalid_argument("delta0: degree budgets must be nondecreasing");
  }
  if (t1.o > t2.o || t1.o > t3.o)
    throw std::invalid_argument("delta0: first vanishing order must be minimal");

  DeterminantCertificate cert;
  cert.k_vector = ks;
  cert.o1 = t1.o;
  cert.delta0 = det3<BigInt>({{{t1.A, t1.B, t1.C}, {t2.A, t2.B, t2.C}, {t3.A, t3.B, t3.C}}});
  cert.nonvanishing = !cert.delta0.is_zero();
  if (cert.nonvanishing) {
    OrdPrimitive op = ord_and_primitive(cert.delta0);
    long budget = degree_budget(t1) + degree_budget(t2) + degree_budget(t3);
    // ord Delta >= o(k1): the remainder column substitution shows every term
    // of Delta vanishes at least to the smallest remainder order.
    if (op.ord < cert.o1 || cert.delta0.degree() > budget)
      throw std::logic_error("delta0: determinant escapes the ord/deg window");
    cert.content = op.content;
    cert.D = IntPolynomial::monomial(BigInt(1), op.ord - cert.o1) * op.primitive;
  }
  return cert;
}

// Nonvanishing certificate over candidate triples per index: each
// candidate list is tried in minimal-o-first order (stable within equal
// o), index combinations lexicographically. Combinations violating the
// order preconditions of delta0 are skipped. Returns the first
// nonvanishing certificate, or nullopt when every admissible combination
// has a vanishing determinant.
inline std::optional<DeterminantCertificate> delta0_search(
    const std::array<long, 3>& ks, const std::vector<ApproxTriple>& c1,
    const std::vector<ApproxTriple>& c2, const std::vector<ApproxTriple>& c3) {
  auto order = [](const std::vector<ApproxTriple>& c) {
    std::vector<std::size_t> idx(c.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return c[a].o < c[b].o; });
    return idx;
  };
  for (std::size_t i1 : order(c1))
    for (std::size_t i2 : order(c2))
      for (std::size_t i3 : order(c3)) {
        const ApproxTriple &t1 = c1[i1], &t2 = c2[i2], &t3 = c3[i3];
        if (degree_budget(t1) > degree_budget(t2) ||
            degree_budget(t2) > degree_budget(t3))
          continue;
        if (t1.o > t2.o || t1.o > t3.o) continue;
        DeterminantCertificate cert = delta0(ks, t1, t2, t3);
        if (cert.nonvanishing) return cert;
      }
  return std::nullopt;
}

// Checks Delta(k, m, z) == Delta(k, 0, z^{d^m}) * prod_{j<m} Phi(z^{d^j}).
inline bool delta_product_check(const MahlerSystem& sys, const std::array<long, 3>& ks,
                                const ApproxTriple& t1, const ApproxTriple& t2,
                                const ApproxTriple& t3, long m) {
  if (m < 0 || m > 3)
    throw std::invalid_argument("delta_product_check: level must be in 0..3");
  FormsAtLevel f1 = forms_at_level(sys, ks[0], t1, m);
  FormsAtLevel f2 = forms_at_level(sys, ks[1], t2, m);
  FormsAtLevel f3 = forms_at_level(sys, ks[2], t3, m);
  IntPolynomial lhs =
      det3<BigInt>({{{f1.A, f1.B, f1.C}, {f2.A, f2.B, f2.C}, {f3.A, f3.B, f3.C}}});

  IntPolynomial base =
      det3<BigInt>({{{t1.A, t1.B, t1.C}, {t2.A, t2.B, t2.C}, {t3.A, t3.B, t3.C}}});
  long dm = 1;
  for (long j = 0; j < m; ++j) dm *= sys.d;
  IntPolynomial rhs = base.compose_power(dm);
  IntPolynomial f = phi(sys);
  long dj = 1;
  for (long j = 0; j < m; ++j) {
    rhs = rhs * f.compose_power(dj);
    dj *= sys.d;
  }
  return lhs == rhs;
}

struct ScanRow {
  long k = 0;
  long o = 0;
  bool nonvanishing = false;
  std::string error;  // nonempty when the solve for this k failed
};

// Determinant scan over consecutive triples (k, k+1, k+2) of the pattern.
// Solves are shared across overlapping triples.
inline std::vector<ScanRow> scan(const MahlerSystem& sys, const std::string& pattern,
                                 const std::vector<long>& k_values) {
  std::map<long, ApproxTriple> cache;
  auto solved = [&](long k) -> const ApproxTriple& {
    auto it = cache.find(k);
    if (it == cache.end())
      it = cache.emplace(k, solve(sys, degree_pattern(pattern, k))).first;
    return it->second;
  };

  std::vector<ScanRow> rows;
  rows.reserve(k_values.size());
  for (long k : k_values) {
    ScanRow row;
    row.k = k;
    try {
      const ApproxTriple& t1 = solved(k);
      const ApproxTriple& t2 = solved(k + 1);
      const ApproxTriple& t3 = solved(k + 2);
      row.o = t1.o;
      DeterminantCertificate cert = delta0({k, k + 1, k + 2}, t1, t2, t3);
      row.nonvanishing = cert.nonvanishing;
      long budget = degree_budget(t1) + degree_budget(t2) + degree_budget(t3);
      // A remainder order beyond the degree budget forces Delta == 0.
      if (t1.o > budget && cert.nonvanishing)
        throw std::logic_error("scan: nonzero determinant above the degree budget");
    } catch (const std::logic_error&) {
      throw;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

struct Condition12Result {
  bool holds = false;
  long checked_up_to = -1;  // largest level j whose value was evaluated
  long failed_at = -1;      // level with Phi((a/b)^{d^j}) == 0, -1 if none
};

// Decides whether Phi((a/b)^{d^j}) != 0 for every j >= 0. Levels are
// evaluated exactly until (a/b)^{d^j} drops below a lower bound on the
// modulus of the nonzero roots of Phi; beyond that point no root can be hit.
inline Condition12Result check_condition12(const MahlerSystem& sys, const BigInt& a,
                                           const BigInt& b) {
  BigInt abs_a = a < 0 ? BigInt(-a) : a;
  if (abs_a == 0 || b < 2 || abs_a >= b)
    throw std::invalid_argument("check_condition12: need 0 < |a| < b with b >= 2");
  IntPolynomial f = phi(sys);
  std::optional<Rational> rho = nonzero_root_modulus_lower_bound(f);
  Condition12Result res;
  Rational x = make_rational(a, b);
  for (long j = 0;; ++j) {
    // No nonzero roots at all, or the point is already below all of them.
    if (!rho || abs_rational(x) < *rho) break;
    if (f.eval<Rational>(x) == 0) {
      res.failed_at = j;
      res.checked_up_to = j;
      res.holds = false;
      return res;
    }
    res.checked_up_to = j;
    x = pow_rational(x, sys.d);
  }
  res.holds = true;
  return res;
}

// Constant coefficient s0 of the shifted determinant: the 2x2 minor of the
// constant terms of the second and third forms times the leading remainder
// coefficient of the first. When the first vanishing order is strictly
// minimal, s0 equals the coefficient of z^{o(k1)} in Delta, so s0 != 0
// certifies nonvanishing without expanding the full determinant.
inline Rational s0_precheck(const ApproxTriple& t2, const ApproxTriple& t3,
                            const Rational& leading_remainder) {
  Rational minor = Rational(t2.A[0]) * Rational(t3.B[0]) - Rational(t3.A[0]) * Rational(t2.B[0]);
  return minor * leading_remainder;
}

}  // namespace mahler

#endif
