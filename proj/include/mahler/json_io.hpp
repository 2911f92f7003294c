#ifndef MAHLER_JSON_IO_HPP
#define MAHLER_JSON_IO_HPP

// JSON serialization shared by the CLI and the golden data file.
// Conventions:
//   polynomials  dense arrays of decimal strings, lowest exponent first
//   rationals    "num/den" strings, plain "num" when the denominator is 1
//   key order    fixed at write time, so equal inputs dump byte-identically
// Readers reject unknown fields.

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mahler/certificates.hpp"
#include "mahler/exponent.hpp"
#include "mahler/hermite_pade.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/rational.hpp"
#include "mahler/system.hpp"
#include "mahler/witness.hpp"

namespace mahler {

using Json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown_fields(const Json& j, const std::string& what,
                                  std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw std::invalid_argument(what + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* name : allowed) known = known || item.key() == name;
    if (!known) throw std::invalid_argument(what + ": unknown field '" + item.key() + "'");
  }
}

inline const Json& require_field(const Json& j, const std::string& what, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw std::invalid_argument(what + ": missing field '" + name + "'");
  return *it;
}

}  // namespace detail

inline Json poly_to_json(const IntPolynomial& p) {
  Json arr = Json::array();
  if (p.degree() < 0) {
    arr.push_back("0");
    return arr;
  }
  for (const BigInt& c : p.coeffs()) arr.push_back(c.get_str());
  return arr;
}

inline IntPolynomial poly_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw std::invalid_argument(what + ": expected an array of strings");
  std::vector<BigInt> c;
  c.reserve(j.size());
  for (const Json& e : j) {
    if (!e.is_string()) throw std::invalid_argument(what + ": coefficients must be strings");
    c.push_back(parse_bigint(e.get<std::string>()));
  }
  return IntPolynomial(std::move(c));
}

inline Json rational_to_json(const Rational& q) { return Json(to_string(q)); }

inline Rational rational_from_json(const Json& j, const std::string& what) {
  if (!j.is_string()) throw std::invalid_argument(what + ": expected a fraction string");
  return parse_rational(j.get<std::string>());
}

inline Json rationals_to_json(const std::vector<Rational>& v) {
  Json arr = Json::array();
  for (const Rational& q : v) arr.push_back(to_string(q));
  return arr;
}

inline std::vector<Rational> rationals_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw std::invalid_argument(what + ": expected an array of fractions");
  std::vector<Rational> v;
  v.reserve(j.size());
  for (const Json& e : j) v.push_back(rational_from_json(e, what));
  return v;
}

inline Json affine_to_json(const AffineInLambda& f) {
  Json j;
  j["constant"] = to_string(f.constant);
  j["slope"] = to_string(f.slope);
  j["delta1"] = f.delta1_coeff;
  j["delta2"] = f.delta2_coeff;
  j["display"] = to_string(f);
  return j;
}

inline AffineInLambda affine_from_json(const Json& j, const std::string& what) {
  detail::reject_unknown_fields(j, what, {"constant", "slope", "delta1", "delta2", "display"});
  AffineInLambda f;
  f.constant = rational_from_json(detail::require_field(j, what, "constant"), what);
  f.slope = rational_from_json(detail::require_field(j, what, "slope"), what);
  f.delta1_coeff = detail::require_field(j, what, "delta1").get<long>();
  f.delta2_coeff = detail::require_field(j, what, "delta2").get<long>();
  return f;
}

inline Json system_to_json(const MahlerSystem& sys) {
  Json j;
  j["name"] = sys.name;
  j["d"] = sys.d;
  j["delta"] = sys.delta;
  j["P"] = poly_to_json(sys.P);
  j["P11"] = poly_to_json(sys.P11);
  j["P12"] = poly_to_json(sys.P12);
  j["P21"] = poly_to_json(sys.P21);
  j["P22"] = poly_to_json(sys.P22);
  j["P10"] = poly_to_json(sys.P10);
  j["P20"] = poly_to_json(sys.P20);
  j["seeds"] = Json{{"f", rationals_to_json(sys.f_seeds)}, {"g", rationals_to_json(sys.g_seeds)}};
  return j;
}

inline MahlerSystem system_from_json(const Json& j) {
  const std::string what = "system";
  detail::reject_unknown_fields(
      j, what,
      {"name", "d", "delta", "P", "P11", "P12", "P21", "P22", "P10", "P20", "seeds", "phi"});
  MahlerSystem sys;
  sys.name = detail::require_field(j, what, "name").get<std::string>();
  sys.d = detail::require_field(j, what, "d").get<long>();
  sys.delta = detail::require_field(j, what, "delta").get<long>();
  sys.P = poly_from_json(detail::require_field(j, what, "P"), what + ".P");
  sys.P11 = poly_from_json(detail::require_field(j, what, "P11"), what + ".P11");
  sys.P12 = poly_from_json(detail::require_field(j, what, "P12"), what + ".P12");
  sys.P21 = poly_from_json(detail::require_field(j, what, "P21"), what + ".P21");
  sys.P22 = poly_from_json(detail::require_field(j, what, "P22"), what + ".P22");
  sys.P10 = poly_from_json(detail::require_field(j, what, "P10"), what + ".P10");
  sys.P20 = poly_from_json(detail::require_field(j, what, "P20"), what + ".P20");
  const Json& seeds = detail::require_field(j, what, "seeds");
  detail::reject_unknown_fields(seeds, what + ".seeds", {"f", "g"});
  sys.f_seeds = rationals_from_json(detail::require_field(seeds, what, "f"), what + ".seeds.f");
  sys.g_seeds = rationals_from_json(detail::require_field(seeds, what, "g"), what + ".seeds.g");
  sys.validate();
  if (j.contains("phi")) {
    IntPolynomial given = poly_from_json(j["phi"], what + ".phi");
    if (!(given == phi(sys)))
      throw std::invalid_argument("system: phi does not match the pair matrix determinant");
  }
  return sys;
}

inline Json series_to_json(const TruncatedSeries& s) {
  Json arr = Json::array();
  for (const Rational& c : s.coeffs()) arr.push_back(to_string(c));
  return arr;
}

inline Json triple_to_json(const ApproxTriple& t) {
  Json j;
  j["degrees"] = Json::array({t.degrees.d1, t.degrees.d2, t.degrees.d3});
  j["A"] = poly_to_json(t.A);
  j["B"] = poly_to_json(t.B);
  j["C"] = poly_to_json(t.C);
  j["o"] = t.o;
  j["kernel_dimension"] = t.kernel_dimension;
  j["remainder_prefix"] = series_to_json(t.remainder_prefix);
  return j;
}

inline Json determinant_to_json(const DeterminantCertificate& c) {
  Json j;
  j["k"] = Json::array({c.k_vector[0], c.k_vector[1], c.k_vector[2]});
  j["o1"] = c.o1;
  j["delta0"] = poly_to_json(c.delta0);
  j["cofactor"] = poly_to_json(c.D);
  j["content"] = c.content.get_str();
  j["nonvanishing"] = c.nonvanishing;
  return j;
}

inline Json mu_piece_to_json(const MuPiece& p) {
  Json j;
  j["interval"] = Json::array({to_string(p.lo), to_string(p.hi)});
  j["numerator"] = to_string(p.numerator);
  j["denominator"] = affine_to_json(p.denominator);
  j["source_ell"] = p.source_ell;
  return j;
}

inline Json certificate_to_json(const ExponentCertificate& c) {
  Json j;
  j["system"] = c.system;
  j["pattern"] = c.pattern;
  Json windows = Json::array(), orders = Json::array();
  for (const auto& ks : c.k_lists) windows.push_back(Json::array({ks[0], ks[1], ks[2]}));
  for (const auto& os : c.o_lists) orders.push_back(Json::array({os[0], os[1], os[2]}));
  j["windows"] = windows;
  j["orders"] = orders;
  j["growth"] = Json{{"e_bar_offset", c.growth.e_bar_offset},
                     {"tau", c.growth.tau},
                     {"d", c.growth.d},
                     {"delta1", c.growth.delta1_needed},
                     {"delta2", c.growth.delta2_needed}};
  Json dets = Json::array();
  for (const auto& d : c.determinants) dets.push_back(determinant_to_json(d));
  j["determinants"] = dets;
  Json theta = Json::array(), nu = Json::array();
  for (const auto& f : c.theta) theta.push_back(affine_to_json(f));
  for (const auto& f : c.nu) nu.push_back(affine_to_json(f));
  j["theta"] = theta;
  j["nu"] = nu;
  j["lambda0"] = to_string(c.lambda0);
  Json mu = Json::array();
  for (const auto& p : c.mu) mu.push_back(mu_piece_to_json(p));
  j["mu"] = mu;
  j["mu_at_zero"] = to_string(c.mu_at_zero());
  j["delta_limit_note"] = c.delta_limit_note;
  if (c.cond12) {
    j["condition12"] = Json{{"holds", c.cond12->holds},
                            {"checked_up_to", c.cond12->checked_up_to},
                            {"failed_at", c.cond12->failed_at}};
  }
  return j;
}

inline Json scan_to_json(const std::vector<ScanRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["k"] = r.k;
    j["o"] = r.o;
    j["nonvanishing"] = r.nonvanishing;
    if (!r.error.empty()) j["error"] = r.error;
    arr.push_back(j);
  }
  return arr;
}

inline Json decay_to_json(const DecayReport& r) {
  Json j;
  j["k"] = r.k;
  j["lambda"] = to_string(r.lambda.value);
  j["lambda_exact"] = r.lambda.exact;
  j["V"] = to_string(r.V);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["m"] = row.m;
    e["abs_lower"] = to_string(row.abs_lo);
    e["abs_upper"] = to_string(row.abs_hi);
    e["empirical_exponent"] = row.empirical;
    e["predicted_exponent"] = to_string(row.predicted);
    e["within_bound"] = row.within;
    e["sign_definite"] = row.r.sign_definite();
    rows.push_back(e);
  }
  j["rows"] = rows;
  return j;
}

inline Json linear_form_to_json(const IntegerLinearForm& f) {
  Json j;
  j["k"] = f.k;
  j["m"] = f.m;
  j["a_coeff"] = f.a_coeff.get_str();
  j["b_coeff"] = f.b_coeff.get_str();
  j["c_coeff"] = f.c_coeff.get_str();
  j["scaler_exponent"] = f.q_exponent;
  j["exponent_adjusted"] = f.exponent_adjusted;
  return j;
}

}  // namespace mahler

#endif
