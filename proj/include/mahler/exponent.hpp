#ifndef MAHLER_EXPONENT_HPP
#define MAHLER_EXPONENT_HPP

// Linear-independence exponents from certified approximant triples.
//
// The pipeline: a verified degree-growth bound max(deg A_m, deg B_m,
// deg C_m) <= (e + t) d^m - t with t = tau/(d-1) yields height exponents
//   E(k) = e(k) + t + delta1,
//   V(k) = (1 - lambda) o(k) - e(k) - t - delta2,
// and per-triple forms
//   theta(l) = max_{i<j} { E(k_i) + E(k_j) },
//   nu(l)    = min_{i != j} { V(k_i) - E(k_j) }.
// When 0 < nu(1) < ... < nu(L) < d nu(1) holds on [0, lambda0), the measure
// is mu(lambda) = max_l theta(l+1)/nu(l) with theta(L+1) = d theta(1).
//
// lambda enters only through (1 - lambda) o(k); delta1 and delta2 are
// arbitrarily small positive parameters carried symbolically and reported
// in the one-sided limit -> 0 when a certificate quotes closed forms.

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mahler/certificates.hpp"
#include "mahler/hermite_pade.hpp"
#include "mahler/rational.hpp"
#include "mahler/system.hpp"

namespace mahler {

// value = constant + slope * lambda + delta1_coeff * delta1
//                                   + delta2_coeff * delta2
struct AffineInLambda {
  Rational constant{0};
  Rational slope{0};
  long delta1_coeff = 0;
  long delta2_coeff = 0;

  bool delta_free() const { return delta1_coeff == 0 && delta2_coeff == 0; }
  // Value in the limit delta1, delta2 -> 0.
  Rational eval_limit(const Rational& lambda) const { return constant + slope * lambda; }

  bool operator==(const AffineInLambda& o) const {
    return constant == o.constant && slope == o.slope &&
           delta1_coeff == o.delta1_coeff && delta2_coeff == o.delta2_coeff;
  }
  AffineInLambda operator+(const AffineInLambda& o) const {
    return {constant + o.constant, slope + o.slope, delta1_coeff + o.delta1_coeff,
            delta2_coeff + o.delta2_coeff};
  }
  AffineInLambda operator-(const AffineInLambda& o) const {
    return {constant - o.constant, slope - o.slope, delta1_coeff - o.delta1_coeff,
            delta2_coeff - o.delta2_coeff};
  }
  AffineInLambda scaled(long c) const {
    return {constant * c, slope * c, delta1_coeff * c, delta2_coeff * c};
  }
};

inline std::string to_string(const AffineInLambda& f) {
  std::string s = to_string(f.constant);
  auto term = [&](const std::string& x, const Rational& c) {
    if (c == 0) return;
    if (c > 0) s += " + ";
    else s += " - ";
    Rational a = abs_rational(c);
    if (a != 1) s += to_string(a) + "*";
    s += x;
  };
  term("lambda", f.slope);
  term("delta1", Rational(f.delta1_coeff));
  term("delta2", Rational(f.delta2_coeff));
  return s;
}

namespace detail {

// Sign of f at a fixed lambda, valid for all sufficiently small positive
// delta1, delta2. A zero rational part defers to the delta coefficients;
// mixed-sign delta coefficients leave the sign ambiguous.
inline int sign_in_limit(const AffineInLambda& f, const Rational& lambda) {
  Rational v = f.eval_limit(lambda);
  if (v != 0) return v > 0 ? 1 : -1;
  const long a = f.delta1_coeff, b = f.delta2_coeff;
  if (a == 0 && b == 0) return 0;
  if (a >= 0 && b >= 0) return 1;
  if (a <= 0 && b <= 0) return -1;
  throw std::logic_error("sign_in_limit: mixed-sign delta coefficients");
}

}  // namespace detail

// Degree-growth data for one degree pattern: e_bar(k) = k + e_bar_offset
// and a substitution constant tau, both verified by verify_degree_bound.
struct GrowthParams {
  long e_bar = 0;  // bound for the triple the search ran on
  long tau = 0;
  bool delta1_needed = false;  // (1 + delta) |Ptilde(0)| > 1
  bool delta2_needed = false;  // |P(0)| > 1
};

struct GrowthProfile {
  long e_bar_offset = 0;
  long tau = 0;
  long d = 2;
  bool delta1_needed = false;
  bool delta2_needed = false;

  long e_bar(long k) const { return k + e_bar_offset; }
  Rational t() const { return Rational(tau) / Rational(d - 1); }
};

// Proves max(deg A_m, deg B_m, deg C_m) <= (e + t) d^m - t for all m >= 0,
// t = tau/(d-1), by induction with one constant slack per component: with
// s_A, s_B, s_C >= 0 the invariant deg A_m <= bound(m) - s_A (and likewise
// for B, C) holds at m = 0 and propagates through
//   A' = P11 A(z^d) + P21 B(z^d)
//   B' = P12 A(z^d) + P22 B(z^d)
//   C' = P10 A(z^d) + P20 B(z^d) + P C(z^d)
// exactly when every per-line condition below is met. Returns true when
// some slack triple verifies all lines.
inline bool verify_degree_bound(const MahlerSystem& sys, const ApproxTriple& triple,
                                long e_bar, long tau) {
  if (e_bar < 0 || tau < 0)
    throw std::invalid_argument("verify_degree_bound: e_bar and tau must be nonnegative");
  const long d = sys.d;
  // Base case on the degree bounds, so the verdict is uniform across every
  // triple sharing the pattern.
  const long degA = triple.degrees.d1, degB = triple.degrees.d2, degC = triple.degrees.d3;
  if (degA > e_bar || degB > e_bar || degC > e_bar) return false;
  const long capA = e_bar - degA, capB = e_bar - degB, capC = e_bar - degC;

  auto line_ok = [&](const IntPolynomial& p, long bound) {
    return p.is_zero() || p.degree() <= bound;
  };
  for (long sA = 0; sA <= capA; ++sA)
    for (long sB = 0; sB <= capB; ++sB) {
      if (!line_ok(sys.P11, tau + (d - 1) * sA)) continue;
      if (!line_ok(sys.P21, tau + d * sB - sA)) continue;
      if (!line_ok(sys.P12, tau + d * sA - sB)) continue;
      if (!line_ok(sys.P22, tau + (d - 1) * sB)) continue;
      for (long sC = 0; sC <= capC; ++sC) {
        if (!line_ok(sys.P10, tau + d * sA - sC)) continue;
        if (!line_ok(sys.P20, tau + d * sB - sC)) continue;
        if (!line_ok(sys.P, tau + (d - 1) * sC)) continue;
        return true;
      }
    }
  return false;
}

// Minimal verified growth parameters: the base case forces
// e_bar = max(d1, d2, d3), and tau is the least value passing
// verify_degree_bound there. (e_bar, max P-degree) always verifies with
// zero slack, so the search terminates.
inline GrowthParams growth_params(const MahlerSystem& sys, const ApproxTriple& triple) {
  long max_p_deg = sys.P.degree();
  for (const IntPolynomial* p :
       {&sys.P11, &sys.P12, &sys.P21, &sys.P22, &sys.P10, &sys.P20})
    max_p_deg = std::max(max_p_deg, p->degree());
  const long e = std::max(
      0L, std::max(triple.degrees.d1, std::max(triple.degrees.d2, triple.degrees.d3)));

  GrowthParams gp;
  for (long tau = 0; tau <= max_p_deg; ++tau)
    if (verify_degree_bound(sys, triple, e, tau)) {
      gp.e_bar = e;
      gp.tau = tau;
      BigInt pt0 = ptilde(sys)[0];
      if (pt0 < 0) pt0 = -pt0;
      BigInt p0 = sys.P[0];
      if (p0 < 0) p0 = -p0;
      gp.delta1_needed = (1 + sys.delta) * pt0 > 1;
      gp.delta2_needed = p0 > 1;
      return gp;
    }
  throw std::runtime_error("growth_params: no verified (e_bar, tau) within bounds");
}

inline GrowthProfile growth_profile_from(const MahlerSystem& sys, long k,
                                         const GrowthParams& gp) {
  return GrowthProfile{gp.e_bar - k, gp.tau, sys.d, gp.delta1_needed, gp.delta2_needed};
}

// E(k) = e_bar(k) + t + delta1 (constant in lambda).
inline AffineInLambda height_exponent(const GrowthProfile& g, long k) {
  return {Rational(g.e_bar(k)) + g.t(), Rational(0), g.delta1_needed ? 1 : 0, 0};
}

// V(k) = (1 - lambda) o(k) - e_bar(k) - t - delta2.
inline AffineInLambda decay_exponent(const GrowthProfile& g, long k, long o) {
  return {Rational(o) - Rational(g.e_bar(k)) - g.t(), Rational(-o), 0,
          g.delta2_needed ? -1 : 0};
}

struct NuPiece {
  Rational lo, hi;
  AffineInLambda form;
};

struct ThetaNu {
  AffineInLambda theta;
  std::vector<NuPiece> nu_pieces;  // lower envelope of the pair forms on [0, 2/3)
  bool single_pair = false;        // one ordered pair attains the min throughout
  AffineInLambda nu;               // the dominating form when single_pair
};

// theta = max over unordered pairs of E(k_i) + E(k_j); nu = min over
// ordered pairs (i, j), i != j, of V(k_i) - E(k_j), taken on the working
// interval [0, 2/3). All candidates share the same slope sign structure in
// the deltas, so the envelope is decided on the rational affine parts.
inline ThetaNu theta_nu(const GrowthProfile& g, const std::array<long, 3>& ks,
                        const std::array<long, 3>& os) {
  ThetaNu r;
  AffineInLambda E[3], V[3];
  for (int i = 0; i < 3; ++i) {
    E[i] = height_exponent(g, ks[i]);
    V[i] = decay_exponent(g, ks[i], os[i]);
  }
  bool first = true;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      AffineInLambda cand = E[i] + E[j];
      if (first || cand.constant > r.theta.constant) r.theta = cand;
      first = false;
    }

  std::vector<AffineInLambda> cands;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) cands.push_back(V[i] - E[j]);

  const Rational lo(0), hi = make_rational(2, 3);
  // Affine candidates: minimal at both endpoints means minimal throughout.
  std::size_t best = cands.size();
  for (std::size_t c = 0; c < cands.size() && best == cands.size(); ++c) {
    bool dominates = true;
    for (std::size_t o = 0; o < cands.size() && dominates; ++o) {
      if (o == c) continue;
      dominates = cands[c].eval_limit(lo) <= cands[o].eval_limit(lo) &&
                  cands[c].eval_limit(hi) <= cands[o].eval_limit(hi);
    }
    if (dominates) best = c;
  }
  if (best < cands.size()) {
    r.single_pair = true;
    r.nu = cands[best];
    r.nu_pieces.push_back({lo, hi, r.nu});
    return r;
  }

  // Pointwise-min piecewise form: pairwise crossings split [lo, hi) into
  // subintervals on which one candidate is minimal.
  std::vector<Rational> cuts{lo, hi};
  for (std::size_t a = 0; a < cands.size(); ++a)
    for (std::size_t b = a + 1; b < cands.size(); ++b) {
      Rational dc = cands[a].constant - cands[b].constant;
      Rational ds = cands[a].slope - cands[b].slope;
      if (ds == 0) continue;
      Rational x = -dc / ds;
      if (x > lo && x < hi) cuts.push_back(x);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    std::size_t arg = 0;
    for (std::size_t c = 1; c < cands.size(); ++c)
      if (cands[c].eval_limit(mid) < cands[arg].eval_limit(mid)) arg = c;
    if (!r.nu_pieces.empty() && r.nu_pieces.back().form == cands[arg])
      r.nu_pieces.back().hi = cuts[i + 1];
    else
      r.nu_pieces.push_back({cuts[i], cuts[i + 1], cands[arg]});
  }
  return r;
}

// Supremum lambda0 of lambda >= 0 with 0 < nu(1) < ... < nu(L) < d nu(1)
// strict on all of [0, lambda0), in the limit delta1, delta2 -> 0; capped
// at the working-interval bound 2/3. Throws when the chain already fails
// at lambda = 0.
inline Rational lambda0_chain(const std::vector<AffineInLambda>& nu, long d) {
  if (nu.empty()) throw std::invalid_argument("lambda0_chain: empty nu list");
  std::vector<AffineInLambda> constraints;
  constraints.push_back(nu.front());
  for (std::size_t l = 0; l + 1 < nu.size(); ++l) constraints.push_back(nu[l + 1] - nu[l]);
  constraints.push_back(nu.front().scaled(d) - nu.back());

  Rational sup = make_rational(2, 3);
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const AffineInLambda& g = constraints[i];
    if (detail::sign_in_limit(g, Rational(0)) <= 0)
      throw std::runtime_error("lambda0_chain: no admissible lambda (constraint " +
                               std::to_string(i) + " fails at lambda = 0)");
    if (g.slope < 0) sup = std::min(sup, Rational(-g.constant / g.slope));
  }
  return sup;
}

struct MuPiece {
  Rational lo, hi;         // piece domain [lo, hi) inside [0, lambda0)
  Rational numerator;      // mu(lambda) = numerator / denominator(lambda)
  AffineInLambda denominator;
  long source_ell = 0;     // 1-based l with mu = theta(l+1)/nu(l)

  Rational value_at(const Rational& lambda) const {
    return numerator / denominator.eval_limit(lambda);
  }
};

namespace detail {

// Scales numerator and denominator to coprime integer coefficients with a
// positive denominator constant; the represented function is unchanged.
inline void canonicalize_piece(MuPiece& p) {
  BigInt m = p.numerator.get_den();
  for (const Rational& x : {p.denominator.constant, p.denominator.slope}) {
    BigInt de = x.get_den();
    m = m / gcd(m, de) * de;
  }
  BigInt n = BigInt(p.numerator.get_num()) * (m / p.numerator.get_den());
  BigInt dc = BigInt(p.denominator.constant.get_num()) *
              (m / p.denominator.constant.get_den());
  BigInt ds =
      BigInt(p.denominator.slope.get_num()) * (m / p.denominator.slope.get_den());
  BigInt g = gcd(gcd(abs(n), abs(dc)), abs(ds));
  if (g == 0) throw std::logic_error("canonicalize_piece: zero piece");
  if (dc < 0) g = -g;
  p.numerator = Rational(n / g);
  p.denominator = {Rational(dc / g), Rational(ds / g), 0, 0};
}

}  // namespace detail

// Upper envelope of theta(l+1)/nu(l) on [0, lambda0) with
// theta(L+1) = d theta(1). Denominators are positive on the domain, so
// pairwise comparisons cross-multiply to affine ones. theta and nu enter
// in the limit delta1, delta2 -> 0.
inline std::vector<MuPiece> mu_pieces(const std::vector<AffineInLambda>& theta,
                                      const std::vector<AffineInLambda>& nu, long d) {
  if (theta.size() != nu.size() || nu.empty())
    throw std::invalid_argument("mu_pieces: theta and nu must be equal-size, nonempty");
  const Rational lambda0 = lambda0_chain(nu, d);
  if (!(lambda0 > 0)) throw std::runtime_error("mu_pieces: empty domain");
  const std::size_t L = nu.size();

  struct Cand {
    Rational num, dc, ds;
    long ell;
  };
  std::vector<Cand> cands;
  for (std::size_t l = 0; l < L; ++l) {
    AffineInLambda top = (l + 1 < L) ? theta[l + 1] : theta[0].scaled(d);
    if (top.slope != 0) throw std::logic_error("mu_pieces: theta must be constant in lambda");
    cands.push_back({top.constant, nu[l].constant, nu[l].slope, static_cast<long>(l) + 1});
  }

  std::vector<Rational> cuts{Rational(0), lambda0};
  for (std::size_t a = 0; a < cands.size(); ++a)
    for (std::size_t b = a + 1; b < cands.size(); ++b) {
      // num_a (dc_b + ds_b x) == num_b (dc_a + ds_a x)
      Rational c0 = cands[a].num * cands[b].dc - cands[b].num * cands[a].dc;
      Rational c1 = cands[a].num * cands[b].ds - cands[b].num * cands[a].ds;
      if (c1 == 0) continue;
      Rational x = -c0 / c1;
      if (x > 0 && x < lambda0) cuts.push_back(x);
    }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<MuPiece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Rational mid = (cuts[i] + cuts[i + 1]) / 2;
    std::size_t arg = 0;
    Rational best(0);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      Rational den = cands[c].dc + cands[c].ds * mid;
      if (!(den > 0)) throw std::logic_error("mu_pieces: nonpositive denominator on domain");
      Rational v = cands[c].num / den;
      if (c == 0 || v > best) {
        best = v;
        arg = c;
      }
    }
    if (!out.empty() && out.back().source_ell == cands[arg].ell)
      out.back().hi = cuts[i + 1];
    else {
      MuPiece p;
      p.lo = cuts[i];
      p.hi = cuts[i + 1];
      p.numerator = cands[arg].num;
      p.denominator = {cands[arg].dc, cands[arg].ds, 0, 0};
      p.source_ell = cands[arg].ell;
      detail::canonicalize_piece(p);
      out.push_back(p);
    }
  }
  return out;
}

struct ExponentCertificate {
  std::string system;
  std::string pattern;
  std::vector<std::array<long, 3>> k_lists;
  std::vector<std::array<long, 3>> o_lists;
  std::vector<DeterminantCertificate> determinants;
  GrowthProfile growth;
  std::vector<AffineInLambda> theta;
  std::vector<AffineInLambda> nu;
  Rational lambda0{0};
  std::vector<MuPiece> mu;
  bool delta_limit_note = false;  // closed forms are limits delta1, delta2 -> 0
  std::optional<Condition12Result> cond12;

  Rational mu_at_zero() const {
    if (mu.empty() || mu.front().lo != 0)
      throw std::logic_error("mu_at_zero: no piece starts at 0");
    return mu.front().value_at(Rational(0));
  }
};

// Full pipeline for anchors (k, k+1, k+2) per entry of `anchors`: solve,
// certify determinants, derive growth parameters, theta/nu, lambda0 and
// mu. When (a, b) is given the substitution-point condition is checked
// too. Preconditions on the anchor list: k_{l,3} <= k_{l+1,1} and
// k_{L,3} <= d * k_{1,1}.
inline ExponentCertificate certify(const MahlerSystem& sys, const std::string& pattern,
                                   const std::vector<long>& anchors,
                                   std::optional<std::pair<BigInt, BigInt>> ab = std::nullopt) {
  if (anchors.empty()) throw std::invalid_argument("certify: empty anchor list");
  for (std::size_t l = 0; l + 1 < anchors.size(); ++l)
    if (anchors[l] + 2 > anchors[l + 1])
      throw std::invalid_argument("certify: anchors must satisfy k_{l,3} <= k_{l+1,1}");
  if (anchors.back() + 2 > sys.d * anchors.front())
    throw std::invalid_argument("certify: anchors must satisfy k_{L,3} <= d * k_{1,1}");

  ExponentCertificate cert;
  cert.system = sys.name;
  cert.pattern = pattern;

  std::map<long, std::vector<ApproxTriple>> cache;
  auto solved = [&](long k) -> const std::vector<ApproxTriple>& {
    auto it = cache.find(k);
    if (it == cache.end())
      it = cache.emplace(k, solve_all(sys, degree_pattern(pattern, k))).first;
    return it->second;
  };

  std::optional<GrowthProfile> profile;
  for (long k0 : anchors) {
    std::array<long, 3> ks{k0, k0 + 1, k0 + 2};
    // Any kernel member is a valid approximant; the certificate needs a
    // combination with a nonvanishing determinant.
    std::optional<DeterminantCertificate> dc =
        delta0_search(ks, solved(ks[0]), solved(ks[1]), solved(ks[2]));
    if (!dc)
      throw std::runtime_error("certify: vanishing determinant at anchor k = " +
                               std::to_string(k0));
    cert.k_lists.push_back(ks);
    std::array<long, 3> os{};
    for (int i = 0; i < 3; ++i) {
      // Minimal remainder order at each index; the decay bound it induces
      // holds for every kernel member, the certificate rows included.
      long o_min = solved(ks[i]).front().o;
      for (const ApproxTriple& t : solved(ks[i])) o_min = std::min(o_min, t.o);
      os[i] = o_min;
    }
    cert.o_lists.push_back(os);
    cert.determinants.push_back(std::move(*dc));

    for (long k : ks) {
      GrowthProfile p =
          growth_profile_from(sys, k, growth_params(sys, solved(k).front()));
      if (!profile)
        profile = p;
      else if (p.e_bar_offset != profile->e_bar_offset || p.tau != profile->tau)
        throw std::runtime_error("certify: growth parameters vary across k");
    }
  }
  cert.growth = *profile;
  cert.delta_limit_note = profile->delta1_needed || profile->delta2_needed;

  // E(k) + V(k) telescopes to (1 - lambda) o(k) + delta1 - delta2.
  for (std::size_t l = 0; l < cert.k_lists.size(); ++l)
    for (int i = 0; i < 3; ++i) {
      long k = cert.k_lists[l][i], o = cert.o_lists[l][i];
      AffineInLambda sum = height_exponent(*profile, k) + decay_exponent(*profile, k, o);
      AffineInLambda expect{Rational(o), Rational(-o), profile->delta1_needed ? 1 : 0,
                            profile->delta2_needed ? -1 : 0};
      if (!(sum == expect)) throw std::logic_error("certify: E + V bookkeeping violated");
    }

  for (std::size_t l = 0; l < cert.k_lists.size(); ++l) {
    ThetaNu tn = theta_nu(*profile, cert.k_lists[l], cert.o_lists[l]);
    if (!tn.single_pair)
      throw std::runtime_error("certify: no single dominating pair for nu at anchor k = " +
                               std::to_string(cert.k_lists[l][0]));
    cert.theta.push_back(tn.theta);
    cert.nu.push_back(tn.nu);
  }

  cert.lambda0 = lambda0_chain(cert.nu, sys.d);
  cert.mu = mu_pieces(cert.theta, cert.nu, sys.d);

  if (ab) {
    cert.cond12 = check_condition12(sys, ab->first, ab->second);
    if (!cert.cond12->holds)
      throw std::runtime_error("certify: substitution-point condition fails at level j = " +
                               std::to_string(cert.cond12->failed_at));
  }
  return cert;
}

}  // namespace mahler

#endif
