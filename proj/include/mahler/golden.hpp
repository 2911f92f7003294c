#ifndef MAHLER_GOLDEN_HPP
#define MAHLER_GOLDEN_HPP

// Loader for the reference data file (theorem tables, appendix rows,
// printed determinant cofactors) and the comparison of a computed
// certificate against it. The file is hand-transcribed reference material;
// nothing in the library ever writes it.

#include <array>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mahler/json_io.hpp"

namespace mahler {

struct GoldenPiece {
  Rational lo, hi, numerator;
  AffineInLambda denominator;
  long source_ell = 0;
};

struct GoldenTheorem {
  std::string system, pattern;
  std::vector<long> anchors;
  long e_bar_offset = 0, tau = 0;
  bool delta1 = false;
  Rational lambda0{0};
  std::vector<AffineInLambda> theta, nu;
  std::vector<GoldenPiece> mu;
  std::vector<Rational> breakpoints;
  Rational mu_at_zero{0};
};

struct GoldenRow {
  std::string system;
  long k = 0, o = 0;
  IntPolynomial A, B;
  long r1_exp = 0, r2_exp = 0;
  BigInt r1_coeff, r2_coeff;
};

struct GoldenDet {
  std::string system;
  std::array<long, 3> k{};
  long o1 = 0;
  IntPolynomial cofactor;
};

struct GoldenData {
  std::map<std::string, GoldenTheorem> theorems;
  std::vector<GoldenRow> appendix_rows;
  std::vector<GoldenDet> determinants;
};

inline std::string default_golden_path() {
  if (const char* env = std::getenv("MAHLER_GOLDEN")) return env;
  return "data/golden_theorems.json";
}

inline GoldenData load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("golden data: cannot open " + path);
  Json root = Json::parse(in);
  detail::reject_unknown_fields(root, "golden",
                                {"description", "theorems", "appendix_rows", "determinants"});
  GoldenData g;

  const Json& thms = detail::require_field(root, "golden", "theorems");
  for (const auto& item : thms.items()) {
    const std::string what = "golden." + item.key();
    const Json& t = item.value();
    detail::reject_unknown_fields(t, what,
                                  {"system", "pattern", "anchors", "growth", "lambda0", "theta",
                                   "nu", "mu", "breakpoints", "mu_at_zero"});
    GoldenTheorem gt;
    gt.system = detail::require_field(t, what, "system").get<std::string>();
    gt.pattern = detail::require_field(t, what, "pattern").get<std::string>();
    for (const Json& k : detail::require_field(t, what, "anchors")) gt.anchors.push_back(k.get<long>());
    const Json& gr = detail::require_field(t, what, "growth");
    detail::reject_unknown_fields(gr, what + ".growth", {"e_bar_offset", "tau", "delta1"});
    gt.e_bar_offset = detail::require_field(gr, what, "e_bar_offset").get<long>();
    gt.tau = detail::require_field(gr, what, "tau").get<long>();
    gt.delta1 = detail::require_field(gr, what, "delta1").get<bool>();
    gt.lambda0 = rational_from_json(detail::require_field(t, what, "lambda0"), what);
    for (const Json& f : detail::require_field(t, what, "theta"))
      gt.theta.push_back(affine_from_json(f, what + ".theta"));
    for (const Json& f : detail::require_field(t, what, "nu"))
      gt.nu.push_back(affine_from_json(f, what + ".nu"));
    for (const Json& p : detail::require_field(t, what, "mu")) {
      detail::reject_unknown_fields(p, what + ".mu",
                                    {"interval", "numerator", "denominator", "source_ell"});
      GoldenPiece gp;
      const Json& iv = detail::require_field(p, what, "interval");
      if (!iv.is_array() || iv.size() != 2)
        throw std::invalid_argument(what + ".mu: interval must be [lo, hi]");
      gp.lo = rational_from_json(iv[0], what);
      gp.hi = rational_from_json(iv[1], what);
      gp.numerator = rational_from_json(detail::require_field(p, what, "numerator"), what);
      gp.denominator = affine_from_json(detail::require_field(p, what, "denominator"),
                                        what + ".mu.denominator");
      gp.source_ell = detail::require_field(p, what, "source_ell").get<long>();
      gt.mu.push_back(gp);
    }
    for (const Json& b : detail::require_field(t, what, "breakpoints"))
      gt.breakpoints.push_back(rational_from_json(b, what));
    gt.mu_at_zero = rational_from_json(detail::require_field(t, what, "mu_at_zero"), what);
    g.theorems[item.key()] = gt;
  }

  for (const Json& r : detail::require_field(root, "golden", "appendix_rows")) {
    const std::string what = "golden.appendix_rows";
    detail::reject_unknown_fields(r, what, {"system", "k", "o", "A", "B", "r1", "r2"});
    GoldenRow row;
    row.system = detail::require_field(r, what, "system").get<std::string>();
    row.k = detail::require_field(r, what, "k").get<long>();
    row.o = detail::require_field(r, what, "o").get<long>();
    row.A = poly_from_json(detail::require_field(r, what, "A"), what + ".A");
    row.B = poly_from_json(detail::require_field(r, what, "B"), what + ".B");
    auto term = [&](const char* name, long& e, BigInt& c) {
      const Json& t = detail::require_field(r, what, name);
      if (!t.is_array() || t.size() != 2)
        throw std::invalid_argument(what + ": remainder term must be [exponent, coeff]");
      e = t[0].get<long>();
      c = parse_bigint(t[1].get<std::string>());
    };
    term("r1", row.r1_exp, row.r1_coeff);
    term("r2", row.r2_exp, row.r2_coeff);
    g.appendix_rows.push_back(row);
  }

  for (const Json& dj : detail::require_field(root, "golden", "determinants")) {
    const std::string what = "golden.determinants";
    detail::reject_unknown_fields(dj, what, {"system", "k", "o1", "cofactor"});
    GoldenDet gd;
    gd.system = detail::require_field(dj, what, "system").get<std::string>();
    const Json& ks = detail::require_field(dj, what, "k");
    if (!ks.is_array() || ks.size() != 3)
      throw std::invalid_argument(what + ": k must have three entries");
    for (int i = 0; i < 3; ++i) gd.k[i] = ks[i].get<long>();
    gd.o1 = detail::require_field(dj, what, "o1").get<long>();
    gd.cofactor = poly_from_json(detail::require_field(dj, what, "cofactor"), what + ".cofactor");
    g.determinants.push_back(gd);
  }
  return g;
}

// Lists every discrepancy between a computed certificate and the reference
// theorem entry; empty means full match.
inline std::vector<std::string> compare_to_golden(const ExponentCertificate& c,
                                                  const GoldenTheorem& g) {
  std::vector<std::string> diffs;
  auto emit = [&](const std::string& s) { diffs.push_back(s); };
  auto affine_str = [](const AffineInLambda& f) { return to_string(f); };

  if (c.system != g.system) emit("system: " + c.system + " vs " + g.system);
  if (c.pattern != g.pattern) emit("pattern: " + c.pattern + " vs " + g.pattern);
  if (c.growth.e_bar_offset != g.e_bar_offset || c.growth.tau != g.tau)
    emit("growth: e_bar_offset " + std::to_string(c.growth.e_bar_offset) + ", tau " +
         std::to_string(c.growth.tau) + " vs " + std::to_string(g.e_bar_offset) + ", " +
         std::to_string(g.tau));
  if (c.growth.delta1_needed != g.delta1)
    emit(std::string("delta1 flag: ") + (c.growth.delta1_needed ? "true" : "false") + " vs " +
         (g.delta1 ? "true" : "false"));

  if (c.k_lists.size() != g.anchors.size()) {
    emit("window count: " + std::to_string(c.k_lists.size()) + " vs " +
         std::to_string(g.anchors.size()));
  } else {
    for (std::size_t i = 0; i < g.anchors.size(); ++i)
      if (c.k_lists[i][0] != g.anchors[i])
        emit("anchor " + std::to_string(i + 1) + ": k = " + std::to_string(c.k_lists[i][0]) +
             " vs " + std::to_string(g.anchors[i]));
  }

  auto table = [&](const char* name, const std::vector<AffineInLambda>& mine,
                   const std::vector<AffineInLambda>& ref) {
    if (mine.size() != ref.size()) {
      emit(std::string(name) + " rows: " + std::to_string(mine.size()) + " vs " +
           std::to_string(ref.size()));
      return;
    }
    for (std::size_t i = 0; i < ref.size(); ++i)
      if (!(mine[i] == ref[i]))
        emit(std::string(name) + "(" + std::to_string(i + 1) + "): " + affine_str(mine[i]) +
             " vs " + affine_str(ref[i]));
  };
  table("theta", c.theta, g.theta);
  table("nu", c.nu, g.nu);

  if (c.lambda0 != g.lambda0)
    emit("lambda0: " + to_string(c.lambda0) + " vs " + to_string(g.lambda0));

  if (c.mu.size() != g.mu.size()) {
    emit("mu pieces: " + std::to_string(c.mu.size()) + " vs " + std::to_string(g.mu.size()));
  } else {
    for (std::size_t i = 0; i < g.mu.size(); ++i) {
      const MuPiece& m = c.mu[i];
      const GoldenPiece& r = g.mu[i];
      std::ostringstream tag;
      tag << "mu piece " << (i + 1);
      if (m.lo != r.lo || m.hi != r.hi)
        emit(tag.str() + " interval: [" + to_string(m.lo) + ", " + to_string(m.hi) + ") vs [" +
             to_string(r.lo) + ", " + to_string(r.hi) + ")");
      if (m.numerator != r.numerator || !(m.denominator == r.denominator))
        emit(tag.str() + ": " + to_string(m.numerator) + " / (" + affine_str(m.denominator) +
             ") vs " + to_string(r.numerator) + " / (" + affine_str(r.denominator) + ")");
      if (m.source_ell != r.source_ell)
        emit(tag.str() + " source ell: " + std::to_string(m.source_ell) + " vs " +
             std::to_string(r.source_ell));
    }
    // Interior piece boundaries must reproduce the published breakpoints.
    std::vector<Rational> bps;
    for (std::size_t i = 1; i < c.mu.size(); ++i) bps.push_back(c.mu[i].lo);
    if (bps != g.breakpoints) {
      std::string mine, ref;
      for (const auto& b : bps) mine += to_string(b) + " ";
      for (const auto& b : g.breakpoints) ref += to_string(b) + " ";
      emit("breakpoints: " + mine + "vs " + ref);
    }
  }

  if (c.mu_at_zero() != g.mu_at_zero)
    emit("mu(0): " + to_string(c.mu_at_zero()) + " vs " + to_string(g.mu_at_zero));
  return diffs;
}

}  // namespace mahler

#endif
