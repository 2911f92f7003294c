#ifndef MAHLER_WITNESS_HPP
#define MAHLER_WITNESS_HPP

// Numeric witness layer over exact rational balls: integer linear forms at
// z = a/b, rigorous enclosures of gamma1 = F(a/b) and gamma2 = G(a/b), and
// the observed remainder decay against the certified exponent V(k).
//
// All arithmetic is ball (center, radius) over exact rationals; no
// floating point enters any bound. Doubles appear only in display strings.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mahler/certificates.hpp"
#include "mahler/exponent.hpp"
#include "mahler/hermite_pade.hpp"
#include "mahler/rational.hpp"
#include "mahler/system.hpp"

namespace mahler {

// Represents a real number within [center - radius, center + radius].
struct BallValue {
  Rational center{0};
  Rational radius{0};

  bool sign_definite() const { return radius < abs_rational(center); }
  bool contains_zero() const { return abs_rational(center) <= radius; }
  Rational abs_upper() const { return abs_rational(center) + radius; }
  // Lower bound of |value|; zero when the ball straddles zero.
  Rational abs_lower() const {
    Rational lo = abs_rational(center) - radius;
    return lo > 0 ? lo : Rational(0);
  }
};

inline BallValue operator+(const BallValue& x, const BallValue& y) {
  return {x.center + y.center, x.radius + y.radius};
}
inline BallValue operator*(const Rational& c, const BallValue& x) {
  return {c * x.center, abs_rational(c) * x.radius};
}

struct GammaPair {
  BallValue f, g;
  long prefix_terms = 0;  // series terms summed exactly
};

// Encloses F(a/b) and G(a/b). The prefix is summed exactly; the tail is
// bounded by sum_{n>N} beta n x^n = beta x^{N+1} ((N+1)(1-x)+x) / (1-x)^2
// with x = |a/b| and beta the linear majorant slope of the coefficient
// bound. The prefix grows until the tail radius is at most target_radius.
inline GammaPair eval_gamma(const MahlerSystem& sys, const BigInt& a, const BigInt& b,
                            const Rational& target_radius) {
  BigInt abs_a = a < 0 ? BigInt(-a) : a;
  if (abs_a == 0 || b < 2 || abs_a >= b)
    throw std::invalid_argument("eval_gamma: need 0 < |a| < b with b >= 2");
  if (!sys.has_coeff_bound)
    throw std::invalid_argument("eval_gamma: system " + sys.name +
                                " carries no coefficient bound");
  if (!(target_radius > 0)) throw std::invalid_argument("eval_gamma: target radius <= 0");

  const Rational point = make_rational(a, b);
  const Rational x = abs_rational(point);
  const Rational beta = sys.coeff_bound.linear_slope();
  const Rational one(1);

  for (long N = 32;; N *= 2) {
    Rational tail = beta * pow_rational(x, N + 1) *
                    (Rational(N + 1) * (one - x) + x) / ((one - x) * (one - x));
    if (tail <= target_radius) {
      SeriesPair pair = expand_pair(sys, N);
      Rational fsum(0), gsum(0), p(1);
      for (long n = 0; n <= N; ++n) {
        fsum += pair.f[n] * p;
        gsum += pair.g[n] * p;
        p *= point;
      }
      return {{fsum, tail}, {gsum, tail}, N + 1};
    }
    if (N > (1L << 24)) throw std::runtime_error("eval_gamma: target radius unreachable");
  }
}

// Integer linear form at level m: coeff = Q_{k,m} * (form at a/b) with
// Q_{k,m} = b^{(e_bar + t) d^m - t}, t = tau/(d-1). The scaled values are
// exact integers whenever the degree bound holds; a fractional exponent is
// rounded up and flagged.
struct IntegerLinearForm {
  long k = 0, m = 0;
  BigInt a_coeff, b_coeff, c_coeff;
  BigInt scaler;           // Q_{k,m}
  long q_exponent = 0;     // Q_{k,m} = b^q_exponent
  bool exponent_adjusted = false;
};

inline IntegerLinearForm integer_forms(const MahlerSystem& sys, long k,
                                       const ApproxTriple& triple, long m, const BigInt& a,
                                       const BigInt& b, const GrowthParams& growth) {
  BigInt abs_a = a < 0 ? BigInt(-a) : a;
  if (abs_a == 0 || b < 2 || abs_a >= b)
    throw std::invalid_argument("integer_forms: need 0 < |a| < b with b >= 2");
  if (m < 0) throw std::invalid_argument("integer_forms: negative level");

  const Rational t = Rational(growth.tau) / Rational(sys.d - 1);
  Rational qe = (Rational(growth.e_bar) + t) * pow_rational(Rational(sys.d), m) - t;
  IntegerLinearForm out;
  out.k = k;
  out.m = m;
  if (is_integer(qe)) {
    out.q_exponent = static_cast<long>(qe.get_num().get_si());
  } else {
    BigInt num = qe.get_num(), den = qe.get_den();
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.q_exponent = static_cast<long>(q.get_si());
    out.exponent_adjusted = true;
  }
  if (out.q_exponent < 0) throw std::logic_error("integer_forms: negative scaling exponent");
  out.scaler = pow_bigint(b, static_cast<unsigned long>(out.q_exponent));

  FormsAtLevel f = forms_at_level(sys, k, triple, m);
  const Rational point = make_rational(a, b);
  auto scaled = [&](const IntPolynomial& p) {
    Rational v = Rational(out.scaler) * p.eval<Rational>(point);
    if (!is_integer(v))
      throw std::logic_error("integer_forms: scaled value not an integer (degree bound violated)");
    return BigInt(v.get_num());
  };
  out.a_coeff = scaled(f.A);
  out.b_coeff = scaled(f.B);
  out.c_coeff = scaled(f.C);
  return out;
}

// lambda = log|a| / log b, exact when |a| and b are powers of one integer
// base; otherwise a certified rational upper bound (|a|^q < b^p proves
// lambda < p/q).
struct LambdaInfo {
  Rational value{0};
  bool exact = false;
};

inline LambdaInfo lambda_of_point(const BigInt& a, const BigInt& b) {
  BigInt abs_a = a < 0 ? BigInt(-a) : a;
  if (abs_a == 0 || b < 2 || abs_a >= b)
    throw std::invalid_argument("lambda_of_point: need 0 < |a| < b with b >= 2");
  if (abs_a == 1) return {Rational(0), true};

  // Minimal base s with b = s^j for the largest j, then |a| = s^i.
  for (long j = mpz_sizeinbase(b.get_mpz_t(), 2); j >= 1; --j) {
    BigInt s;
    if (mpz_root(s.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(j)) == 0) continue;
    long i = 0;
    BigInt v = abs_a;
    while (v > 1 && v % s == 0) {
      v /= s;
      ++i;
    }
    if (v == 1 && i > 0) return {make_rational(BigInt(i), BigInt(j)), true};
    break;  // largest exact root already determines the minimal base
  }

  LambdaInfo res;
  res.exact = false;
  bool have = false;
  for (long q = 1; q <= 48; ++q) {
    BigInt aq = pow_bigint(abs_a, static_cast<unsigned long>(q));
    BigInt bp(1);
    for (long p = 1; p <= q; ++p) {
      bp *= b;
      if (aq < bp) {
        Rational cand = make_rational(BigInt(p), BigInt(q));
        if (!have || cand < res.value) {
          res.value = cand;
          have = true;
        }
        break;
      }
    }
  }
  if (!have) throw std::logic_error("lambda_of_point: no upper bound found");
  return res;
}

struct DecayRow {
  long m = 0;
  BallValue r;              // enclosure of Q_{k,m} R_{k,m}(a/b)
  Rational abs_lo{0}, abs_hi{0};
  double empirical = 0;     // log_b |r| (display only)
  Rational predicted{0};    // -V(k) d^m
  bool within = false;      // |r| <= b^{-(V(k)-1) d^m}, checked exactly
};

struct DecayReport {
  long k = 0;
  LambdaInfo lambda;
  Rational V{0};  // (1 - lambda) o(k) - e_bar(k) - tau/(d-1), delta2 -> 0
  std::vector<DecayRow> rows;
};

namespace detail {

// Decides |r|_hi <= b^{e} for rational e = p/q by integer cross power:
// hi^q <= b^p (negative p handled by moving the power across).
inline bool abs_le_power(const Rational& hi, const BigInt& b, const Rational& e) {
  if (hi == 0) return true;
  unsigned long q = static_cast<unsigned long>(e.get_den().get_ui());
  BigInt p = e.get_num();
  Rational lhs = pow_rational(hi, static_cast<long>(q));
  if (p >= 0) return lhs <= Rational(pow_bigint(b, mpz_get_ui(p.get_mpz_t())));
  BigInt bp = pow_bigint(b, mpz_get_ui(BigInt(-p).get_mpz_t()));
  return lhs * Rational(bp) <= 1;
}

}  // namespace detail

// Encloses r_{k,m} = a_coeff gamma1 + b_coeff gamma2 + c_coeff for each m,
// shrinking the gamma enclosures until every ball is sign-definite, and
// compares the observed size against the decay exponent V(k). The slack of
// one power of b absorbs the level-independent constant.
inline DecayReport decay_report(const MahlerSystem& sys, long k, const ApproxTriple& triple,
                                const std::vector<long>& m_range, const BigInt& a,
                                const BigInt& b, const GrowthParams& growth) {
  DecayReport rep;
  rep.k = k;
  rep.lambda = lambda_of_point(a, b);
  const Rational t = Rational(growth.tau) / Rational(sys.d - 1);
  rep.V = (Rational(1) - rep.lambda.value) * Rational(triple.o) - Rational(growth.e_bar) - t;
  if (!(rep.V > 0)) throw std::runtime_error("decay_report: V(k) <= 0 at this point");

  for (long m : m_range) {
    if (m < 0 || m > 3) throw std::invalid_argument("decay_report: m outside 0..3");
    IntegerLinearForm form = integer_forms(sys, k, triple, m, a, b, growth);
    Rational dm = pow_rational(Rational(sys.d), m);

    DecayRow row;
    row.m = m;
    row.predicted = -rep.V * dm;
    // Radii start well under the predicted size of r and shrink until the
    // enclosure is sign-definite.
    Rational vdm = rep.V * dm;
    BigInt floor_vdm;
    mpz_fdiv_q(floor_vdm.get_mpz_t(), vdm.get_num().get_mpz_t(), vdm.get_den().get_mpz_t());
    BigInt coeff_scale = abs(form.a_coeff) + abs(form.b_coeff) + 1;
    bool enclosed = false;
    for (long extra = 8; extra <= 512; extra *= 2) {
      long exp = static_cast<long>(floor_vdm.get_si()) + extra;
      Rational target = Rational(1) / (Rational(coeff_scale) * pow_rational(Rational(b), exp));
      GammaPair gamma = eval_gamma(sys, a, b, target);
      row.r = Rational(form.a_coeff) * gamma.f + Rational(form.b_coeff) * gamma.g +
              BallValue{Rational(form.c_coeff), Rational(0)};
      if (row.r.sign_definite()) {
        enclosed = true;
        break;
      }
    }
    if (!enclosed)
      throw std::runtime_error("decay_report: insufficient precision for m = " +
                               std::to_string(m));
    row.abs_lo = row.r.abs_lower();
    row.abs_hi = row.r.abs_upper();
    row.empirical = log2_approx(row.abs_hi) / log2_approx(Rational(b));
    row.within = detail::abs_le_power(row.abs_hi, b, (Rational(1) - rep.V) * dm);
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace mahler

#endif
