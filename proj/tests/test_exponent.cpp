// Exponent certificates: the affine envelope rows, the admissible-lambda
// supremum, and the piecewise exponent are checked pointwise against a
// direct rational recomputation at randomly sampled lambda.

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "helpers.hpp"
#include "mahler/exponent.hpp"

using namespace mahler;
using testutil::golden;

namespace {

struct Sampler {
  std::mt19937 rng{20260817u};
  // Uniform-ish rational in [0, hi) with denominator up to 997.
  Rational next(const Rational& hi) {
    std::uniform_int_distribution<long> den(1, 997);
    long q = den(rng);
    Rational scaled = Rational(q) * hi;
    long max_p = static_cast<long>(scaled.get_d() * (1 << 14));
    std::uniform_int_distribution<long> num(0, std::max(0L, max_p - 1));
    Rational x = make_rational(num(rng), q * (1 << 14));
    return x < hi ? x : hi / 2;
  }
};

// E and V rows recomputed from the certificate's raw data, deltas in the
// vanishing limit.
Rational e_row(const ExponentCertificate& c, long k) {
  return Rational(k + c.growth.e_bar_offset) + c.growth.t();
}

Rational v_row(const ExponentCertificate& c, long k, long o, const Rational& lambda) {
  return (1 - lambda) * Rational(o) - Rational(k + c.growth.e_bar_offset) - c.growth.t();
}

Rational theta_direct(const ExponentCertificate& c, std::size_t ell) {
  Rational best;
  bool first = true;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Rational cand = e_row(c, c.k_lists[ell][i]) + e_row(c, c.k_lists[ell][j]);
      if (first || cand > best) best = cand;
      first = false;
    }
  return best;
}

Rational nu_direct(const ExponentCertificate& c, std::size_t ell, const Rational& lambda) {
  Rational best;
  bool first = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      Rational cand = v_row(c, c.k_lists[ell][i], c.o_lists[ell][i], lambda) -
                      e_row(c, c.k_lists[ell][j]);
      if (first || cand < best) best = cand;
      first = false;
    }
  return best;
}

Rational mu_direct(const ExponentCertificate& c, const Rational& lambda) {
  std::size_t L = c.k_lists.size();
  Rational best;
  bool first = true;
  for (std::size_t ell = 0; ell < L; ++ell) {
    Rational th = ell + 1 < L ? theta_direct(c, ell + 1) : Rational(c.growth.d) * theta_direct(c, 0);
    Rational cand = th / nu_direct(c, ell, lambda);
    if (first || cand > best) best = cand;
    first = false;
  }
  return best;
}

Rational mu_from_pieces(const ExponentCertificate& c, const Rational& lambda) {
  for (const MuPiece& p : c.mu)
    if (lambda >= p.lo && lambda < p.hi) return p.value_at(lambda);
  throw std::logic_error("lambda outside every piece");
}

const ExponentCertificate& cert_for(const std::string& id) {
  static std::map<std::string, ExponentCertificate> cache;
  auto it = cache.find(id);
  if (it == cache.end()) {
    const GoldenTheorem& gt = golden().theorems.at(id);
    it = cache.emplace(id, certify(builtin(gt.system), gt.pattern, gt.anchors)).first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("affine forms evaluate and compose consistently", "[exponent]") {
  AffineInLambda f{Rational(5), make_rational(-3, 2), 1, 0};
  CHECK(f.eval_limit(Rational(2)) == Rational(2));
  CHECK_FALSE(f.delta_free());
  AffineInLambda g = f + f;
  CHECK(g.eval_limit(Rational(0)) == Rational(10));
  CHECK(g.delta1_coeff == 2);
  CHECK(f.scaled(3).eval_limit(Rational(2)) == Rational(6));
  CHECK((f - f).delta_free());
}

TEST_CASE("envelope rows match the pointwise extrema", "[exponent]") {
  Sampler sample;
  for (const char* id : {"thm1", "thm2", "thm3", "thm4", "thm5"}) {
    const ExponentCertificate& c = cert_for(id);
    REQUIRE(c.theta.size() == c.k_lists.size());
    REQUIRE(c.nu.size() == c.k_lists.size());
    for (int trial = 0; trial < 200; ++trial) {
      Rational lambda = sample.next(c.lambda0);
      for (std::size_t ell = 0; ell < c.k_lists.size(); ++ell) {
        INFO(id << " ell=" << ell + 1 << " lambda=" << to_string(lambda));
        CHECK(c.theta[ell].eval_limit(lambda) == theta_direct(c, ell));
        CHECK(c.nu[ell].eval_limit(lambda) == nu_direct(c, ell, lambda));
      }
    }
  }
}

TEST_CASE("nu chain is strictly increasing and d-bounded below lambda0", "[exponent]") {
  Sampler sample;
  for (const char* id : {"thm1", "thm2", "thm3", "thm4", "thm5"}) {
    const ExponentCertificate& c = cert_for(id);
    for (int trial = 0; trial < 200; ++trial) {
      Rational lambda = sample.next(c.lambda0);
      Rational first = c.nu.front().eval_limit(lambda);
      CHECK(first > 0);
      Rational prev = first;
      for (std::size_t ell = 1; ell < c.nu.size(); ++ell) {
        Rational cur = c.nu[ell].eval_limit(lambda);
        CHECK(prev < cur);
        prev = cur;
      }
      CHECK(prev < Rational(c.growth.d) * first);
    }
  }
}

TEST_CASE("chain fails at lambda0 itself", "[exponent]") {
  // The supremum is sharp: some chain constraint degenerates at lambda0.
  for (const char* id : {"thm1", "thm2", "thm3", "thm4", "thm5"}) {
    const ExponentCertificate& c = cert_for(id);
    if (c.lambda0 == make_rational(2, 3)) continue;  // capped by the working interval
    Rational l0 = c.lambda0;
    bool some_tight = false;
    Rational first = c.nu.front().eval_limit(l0);
    if (first == 0) some_tight = true;
    for (std::size_t ell = 0; ell + 1 < c.nu.size(); ++ell)
      if (c.nu[ell].eval_limit(l0) == c.nu[ell + 1].eval_limit(l0)) some_tight = true;
    if (c.nu.back().eval_limit(l0) == Rational(c.growth.d) * first) some_tight = true;
    INFO(id);
    CHECK(some_tight);
  }
}

TEST_CASE("piecewise exponent equals the pointwise maximum", "[exponent]") {
  Sampler sample;
  for (const char* id : {"thm1", "thm2", "thm3", "thm4", "thm5"}) {
    const ExponentCertificate& c = cert_for(id);
    for (int trial = 0; trial < 200; ++trial) {
      Rational lambda = sample.next(c.lambda0);
      INFO(id << " lambda=" << to_string(lambda));
      CHECK(mu_from_pieces(c, lambda) == mu_direct(c, lambda));
    }
    CHECK(c.mu_at_zero() == mu_direct(c, Rational(0)));
  }
}

TEST_CASE("pieces tile the admissible interval in order", "[exponent]") {
  for (const char* id : {"thm1", "thm2", "thm3", "thm4", "thm5"}) {
    const ExponentCertificate& c = cert_for(id);
    REQUIRE_FALSE(c.mu.empty());
    CHECK(c.mu.front().lo == 0);
    CHECK(c.mu.back().hi == c.lambda0);
    for (std::size_t i = 0; i + 1 < c.mu.size(); ++i) {
      CHECK(c.mu[i].hi == c.mu[i + 1].lo);
      CHECK(c.mu[i].lo < c.mu[i].hi);
    }
  }
}

TEST_CASE("exponent is nondecreasing in lambda", "[exponent]") {
  Sampler sample;
  for (const char* id : {"thm1", "thm3", "thm4"}) {
    const ExponentCertificate& c = cert_for(id);
    for (int trial = 0; trial < 100; ++trial) {
      Rational a = sample.next(c.lambda0), b = sample.next(c.lambda0);
      if (b < a) std::swap(a, b);
      CHECK(mu_from_pieces(c, a) <= mu_from_pieces(c, b));
    }
  }
}

TEST_CASE("degree-growth bound verifies at the certified parameters", "[exponent]") {
  for (const char* id : {"thm1", "thm2", "thm3", "thm4", "thm5"}) {
    const ExponentCertificate& c = cert_for(id);
    MahlerSystem sys = builtin(c.system);
    long k = c.k_lists.front()[0];
    ApproxTriple t = solve(sys, degree_pattern(c.pattern, k));
    INFO(id);
    CHECK(verify_degree_bound(sys, t, c.growth.e_bar(k), c.growth.tau));
    // tau is minimal for the verified e_bar.
    if (c.growth.tau > 0)
      CHECK_FALSE(verify_degree_bound(sys, t, c.growth.e_bar(k), c.growth.tau - 1));
  }
}

TEST_CASE("propagated degrees stay under the growth bound", "[exponent]") {
  // max(deg A_m, deg B_m, deg C_m) <= (e_bar + t) d^m - t for m <= 3.
  for (const char* id : {"thm1", "thm2", "thm3", "thm4", "thm5"}) {
    const ExponentCertificate& c = cert_for(id);
    MahlerSystem sys = builtin(c.system);
    long k = c.k_lists.front()[0];
    ApproxTriple t = solve(sys, degree_pattern(c.pattern, k));
    Rational tt = c.growth.t();
    for (long m = 0; m <= 3; ++m) {
      FormsAtLevel f = forms_at_level(sys, k, t, m);
      Rational bound =
          (Rational(c.growth.e_bar(k)) + tt) * pow_rational(Rational(sys.d), m) - tt;
      long dmax = std::max({f.A.degree(), f.B.degree(), f.C.degree()});
      INFO(id << " m=" << m);
      CHECK(Rational(dmax) <= bound);
    }
  }
}

TEST_CASE("certify rejects misconfigured requests", "[exponent]") {
  MahlerSystem sys = builtin("thue");
  CHECK_THROWS_AS(certify(sys, "thm1", std::vector<long>{}), std::invalid_argument);
  CHECK_THROWS_AS(certify(sys, "nope", std::vector<long>{29}), std::invalid_argument);
}
