// Serialization layer: round trips, strict field checking, and agreement
// between a recomputed certificate and the stored reference data.

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "mahler/json_io.hpp"

using namespace mahler;
using testutil::golden;

TEST_CASE("polynomial serialization is dense and lowest-first", "[json]") {
  IntPolynomial p(std::vector<BigInt>{BigInt(-4), BigInt(56), BigInt(0), BigInt(0), BigInt(0),
                                      BigInt(1)});
  Json j = poly_to_json(p);
  REQUIRE(j.is_array());
  CHECK(j.size() == 6);
  CHECK(j[0] == "-4");
  CHECK(j[1] == "56");
  CHECK(j[5] == "1");
  CHECK(poly_from_json(j, "p") == p);
  CHECK(poly_to_json(IntPolynomial()) == Json::array({"0"}));
  CHECK(poly_from_json(Json::array({"0"}), "p").is_zero());
}

TEST_CASE("rational serialization uses num/den strings", "[json]") {
  CHECK(rational_to_json(make_rational(-7, 3)) == "-7/3");
  CHECK(rational_to_json(Rational(5)) == "5");
  CHECK(rational_from_json(Json("22/7"), "q") == make_rational(22, 7));
  CHECK(rational_from_json(Json("-9"), "q") == Rational(-9));
  CHECK_THROWS_AS(rational_from_json(Json("1/0"), "q"), std::invalid_argument);
}

TEST_CASE("system serialization round-trips every builtin", "[json]") {
  for (const char* name : {"thue", "stern", "lambert3", "rudin", "dilcher"}) {
    MahlerSystem sys = builtin(name);
    MahlerSystem back = system_from_json(system_to_json(sys));
    INFO(name);
    CHECK(back.name == sys.name);
    CHECK(back.d == sys.d);
    CHECK(back.delta == sys.delta);
    CHECK(back.P == sys.P);
    CHECK(back.P11 == sys.P11);
    CHECK(back.P12 == sys.P12);
    CHECK(back.P21 == sys.P21);
    CHECK(back.P22 == sys.P22);
    CHECK(back.P10 == sys.P10);
    CHECK(back.P20 == sys.P20);
    CHECK(back.f_seeds == sys.f_seeds);
    CHECK(back.g_seeds == sys.g_seeds);
  }
}

TEST_CASE("unknown fields are rejected", "[json]") {
  Json j = system_to_json(builtin("thue"));
  j["extra"] = 1;
  CHECK_THROWS_AS(system_from_json(j), std::invalid_argument);
  Json a = affine_to_json(AffineInLambda{Rational(1), Rational(2), 0, 0});
  a["bogus"] = true;
  CHECK_THROWS_AS(affine_from_json(a, "f"), std::invalid_argument);
}

TEST_CASE("missing fields are named in the error", "[json]") {
  Json j = system_to_json(builtin("thue"));
  j.erase("P11");
  try {
    system_from_json(j);
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("P11") != std::string::npos);
  }
}

TEST_CASE("affine forms round-trip with delta markers", "[json]") {
  AffineInLambda f{make_rational(71, 3), Rational(-31), 2, -1};
  AffineInLambda back = affine_from_json(affine_to_json(f), "f");
  CHECK(back == f);
}

TEST_CASE("reference data file loads with full shape", "[json]") {
  const GoldenData& g = golden();
  CHECK(g.theorems.size() == 5);
  CHECK(g.appendix_rows.size() == 24);
  CHECK(g.determinants.size() == 8);
  for (const auto& [id, thm] : g.theorems) {
    INFO(id);
    CHECK_FALSE(thm.anchors.empty());
    CHECK(thm.theta.size() == thm.anchors.size());
    CHECK(thm.nu.size() == thm.anchors.size());
    CHECK_FALSE(thm.mu.empty());
    CHECK(thm.lambda0 > 0);
  }
}

TEST_CASE("recomputed certificate agrees with the stored reference", "[json]") {
  const GoldenTheorem& gt = golden().theorems.at("thm4");
  ExponentCertificate cert = certify(builtin(gt.system), gt.pattern, gt.anchors);
  CHECK(compare_to_golden(cert, gt).empty());
  // Serialized certificate keeps the same data it was built from.
  Json j = certificate_to_json(cert);
  CHECK(j["system"] == "rudin");
  CHECK(j["mu"].size() == cert.mu.size());
  CHECK(rational_from_json(j["lambda0"], "lambda0") == cert.lambda0);
}

TEST_CASE("comparison reports a named diff on perturbed data", "[json]") {
  const GoldenTheorem& gt = golden().theorems.at("thm4");
  ExponentCertificate cert = certify(builtin(gt.system), gt.pattern, gt.anchors);
  GoldenTheorem bad = gt;
  bad.mu_at_zero = bad.mu_at_zero + 1;
  std::vector<std::string> diffs = compare_to_golden(cert, bad);
  REQUIRE_FALSE(diffs.empty());
  bool named = false;
  for (const std::string& d : diffs)
    if (d.find("mu(0)") != std::string::npos) named = true;
  CHECK(named);
}
