// Command-line front end for the approximation pipeline: catalog listing,
// reference reproductions, and the individual pipeline stages. Exit codes:
// 0 success or full match, 1 verified mismatch, 2 computation failure,
// 3 configuration error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mahler/golden.hpp"
#include "mahler/json_io.hpp"

namespace {

using namespace mahler;

std::string poly_display(const IntPolynomial& p) {
  if (p.degree() < 0) return "0";
  std::string s;
  bool first = true;
  for (long i = 0; i <= p.degree(); ++i) {
    const BigInt& c = p[i];
    if (c == 0) continue;
    BigInt a = abs(c);
    std::string term;
    if (i == 0) {
      term = a.get_str();
    } else {
      if (a != 1) term = a.get_str() + "*";
      term += "z";
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (first) {
      s = (c < 0 ? "-" : "") + term;
      first = false;
    } else {
      s += (c < 0 ? " - " : " + ") + term;
    }
  }
  return s;
}

// Bare file names are resolved against MAHLER_OUT_DIR when it is set.
int emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return 0;
  }
  std::string path = out_path;
  if (path.find('/') == std::string::npos) {
    if (const char* dir = std::getenv("MAHLER_OUT_DIR")) path = std::string(dir) + "/" + path;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::fprintf(stderr, "cannot open %s for writing\n", path.c_str());
    return 2;
  }
  f << content;
  return 0;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

struct SystemChoice {
  std::string name;       // builtin name
  std::string file_path;  // custom definition

  MahlerSystem load() const {
    if (!file_path.empty()) {
      std::ifstream in(file_path);
      if (!in) throw std::invalid_argument("cannot open system file " + file_path);
      return system_from_json(Json::parse(in));
    }
    return builtin(name);
  }
};

DegreeTriple resolve_pattern(const SystemChoice& choice, std::string& pattern, long k) {
  if (pattern.empty()) {
    if (choice.file_path.empty())
      pattern = default_pattern(choice.name);
    else
      throw std::invalid_argument("custom systems need an explicit --pattern");
  }
  return degree_pattern(pattern, k);
}

std::vector<long> default_anchors(const std::string& system) {
  if (system == "thue") return {29, 31, 34, 43, 49};
  if (system == "stern") return {29, 31, 34, 38, 43, 49};
  if (system == "lambert3") return {19, 26, 39};
  if (system == "rudin") return {17, 21, 26};
  if (system == "dilcher") return {10, 26};
  throw std::invalid_argument("no default anchors for system '" + system + "'");
}

std::string certificate_text(const ExponentCertificate& c) {
  std::ostringstream out;
  out << "system: " << c.system << "    pattern: " << c.pattern << "\n";
  out << "growth: e_bar(k) = k";
  if (c.growth.e_bar_offset > 0) out << "+" << c.growth.e_bar_offset;
  if (c.growth.e_bar_offset < 0) out << c.growth.e_bar_offset;
  out << ", tau = " << c.growth.tau;
  if (c.growth.delta1_needed) out << ", delta1 > 0";
  if (c.growth.delta2_needed) out << ", delta2 > 0";
  out << "\n\n";

  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"l", "k", "theta(l)", "nu(l)"});
  for (std::size_t i = 0; i < c.k_lists.size(); ++i)
    rows.push_back({std::to_string(i + 1), std::to_string(c.k_lists[i][0]),
                    to_string(c.theta[i]), to_string(c.nu[i])});
  std::array<std::size_t, 4> w{0, 0, 0, 0};
  for (const auto& r : rows)
    for (int j = 0; j < 4; ++j) w[j] = std::max(w[j], r[j].size());
  for (const auto& r : rows) {
    for (int j = 0; j < 4; ++j) {
      out << r[j] << std::string(w[j] - r[j].size(), ' ');
      out << (j < 3 ? "  " : "");
    }
    out << "\n";
  }

  out << "\nlambda0 = " << to_string(c.lambda0) << "\n";
  for (const auto& p : c.mu)
    out << "mu(lambda) = " << to_string(p.numerator) << " / (" << to_string(p.denominator)
        << ")   for " << to_string(p.lo) << " <= lambda < " << to_string(p.hi)
        << "   [from l = " << p.source_ell << "]\n";
  out << "mu(0) = " << to_string(c.mu_at_zero()) << "\n";
  if (c.delta_limit_note)
    out << "closed forms are the limits delta1, delta2 -> 0\n";
  if (c.cond12)
    out << "phi nonvanishing along the orbit: " << (c.cond12->holds ? "verified" : "FAILED")
        << " (levels checked: " << c.cond12->checked_up_to << ")\n";
  return out.str();
}

int run_list(const std::string& fmt, const std::string& out) {
  std::vector<MahlerSystem> systems;
  for (const char* n : {"thue", "stern", "lambert3", "rudin", "dilcher"})
    systems.push_back(builtin(n));
  if (fmt == "json") {
    Json arr = Json::array();
    for (const auto& s : systems) {
      Json j = system_to_json(s);
      j["phi"] = poly_to_json(phi(s));
      arr.push_back(j);
    }
    return emit(json_text(arr), out);
  }
  std::ostringstream os;
  for (const auto& s : systems)
    os << s.name << "  d=" << s.d << "  delta=" << s.delta << "  P = " << poly_display(s.P)
       << "  Phi = " << poly_display(phi(s)) << "\n";
  return emit(os.str(), out);
}

int run_reproduce(const std::string& id, const std::string& golden_path, const std::string& fmt,
                  const std::string& out) {
  GoldenData g;
  try {
    g = load_golden(golden_path);
  } catch (const std::exception& e) {
    throw std::invalid_argument(e.what());
  }
  auto it = g.theorems.find(id);
  if (it == g.theorems.end())
    throw std::invalid_argument("no reference entry '" + id + "' in " + golden_path);
  const GoldenTheorem& gt = it->second;

  ExponentCertificate cert;
  try {
    cert = certify(builtin(gt.system), gt.pattern, gt.anchors);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "reproduce %s: certify stage failed: %s\n", id.c_str(), e.what());
    return 2;
  }
  std::vector<std::string> diffs = compare_to_golden(cert, gt);

  if (fmt == "json") {
    Json j;
    j["target"] = id;
    j["match"] = diffs.empty();
    Json d = Json::array();
    for (const auto& s : diffs) d.push_back(s);
    j["diffs"] = d;
    j["certificate"] = certificate_to_json(cert);
    int rc = emit(json_text(j), out);
    return rc != 0 ? rc : (diffs.empty() ? 0 : 1);
  }
  std::ostringstream os;
  os << certificate_text(cert) << "\n";
  if (diffs.empty()) {
    os << id << ": match\n";
  } else {
    os << id << ": MISMATCH\n";
    for (const auto& d : diffs) os << "  " << d << "\n";
  }
  int rc = emit(os.str(), out);
  return rc != 0 ? rc : (diffs.empty() ? 0 : 1);
}

int run_expand(const SystemChoice& choice, long n, const std::string& fmt,
               const std::string& out) {
  MahlerSystem sys = choice.load();
  SeriesPair pair = expand_pair(sys, n);
  if (fmt == "json") {
    Json j;
    j["system"] = sys.name;
    j["order"] = n;
    j["f"] = series_to_json(pair.f);
    j["g"] = series_to_json(pair.g);
    return emit(json_text(j), out);
  }
  std::ostringstream os;
  os << "n\tf\tg\n";
  for (long i = 0; i <= n; ++i)
    os << i << "\t" << to_string(pair.f[i]) << "\t" << to_string(pair.g[i]) << "\n";
  return emit(os.str(), out);
}

int run_approx(const SystemChoice& choice, long k, std::string pattern, long order,
               const std::string& fmt, const std::string& out) {
  MahlerSystem sys = choice.load();
  DegreeTriple deg = resolve_pattern(choice, pattern, k);
  ApproxTriple t = solve(sys, deg, order);
  if (fmt == "json") {
    Json j;
    j["system"] = sys.name;
    j["k"] = k;
    j["pattern"] = pattern;
    j["triple"] = triple_to_json(t);
    return emit(json_text(j), out);
  }
  std::ostringstream os;
  os << "system: " << sys.name << "  k = " << k << "  degrees (" << deg.d1 << ", " << deg.d2
     << ", " << deg.d3 << ")\n";
  os << "A = " << poly_display(t.A) << "\n";
  os << "B = " << poly_display(t.B) << "\n";
  os << "C = " << poly_display(t.C) << "\n";
  os << "o = " << t.o << "   kernel dimension = " << t.kernel_dimension << "\n";
  return emit(os.str(), out);
}

int run_det(const SystemChoice& choice, long k, std::string pattern, const std::string& fmt,
            const std::string& out) {
  MahlerSystem sys = choice.load();
  std::array<long, 3> ks{k, k + 1, k + 2};
  std::vector<std::vector<ApproxTriple>> cands;
  for (long ki : ks) {
    std::string pat = pattern;
    cands.push_back(solve_all(sys, resolve_pattern(choice, pat, ki)));
    if (pattern.empty()) pattern = pat;
  }
  DeterminantCertificate cert;
  auto found = delta0_search(ks, cands[0], cands[1], cands[2]);
  if (found) {
    cert = *found;
  } else {
    auto min_o = [](const std::vector<ApproxTriple>& c) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i].o < c[best].o) best = i;
      return c[best];
    };
    cert = delta0(ks, min_o(cands[0]), min_o(cands[1]), min_o(cands[2]));
  }
  if (fmt == "json") {
    Json j;
    j["system"] = sys.name;
    j["pattern"] = pattern;
    j["certificate"] = determinant_to_json(cert);
    return emit(json_text(j), out);
  }
  std::ostringstream os;
  os << "system: " << sys.name << "  window (" << ks[0] << ", " << ks[1] << ", " << ks[2]
     << ")\n";
  os << "Delta(k, 0, z) = " << poly_display(cert.delta0) << "\n";
  os << "             = z^" << cert.o1 << " * (" << poly_display(cert.D) << ")\n";
  os << "nonvanishing: " << (cert.nonvanishing ? "yes" : "NO") << "\n";
  return emit(os.str(), out);
}

int run_scan(const SystemChoice& choice, long k_min, long k_max, std::string pattern,
             const std::string& fmt, const std::string& out) {
  MahlerSystem sys = choice.load();
  if (pattern.empty()) {
    if (choice.file_path.empty())
      pattern = default_pattern(choice.name);
    else
      throw std::invalid_argument("custom systems need an explicit --pattern");
  }
  std::vector<long> ks;
  for (long k = k_min; k <= k_max; ++k) ks.push_back(k);
  std::vector<ScanRow> rows = scan(sys, pattern, ks);
  long ok = 0;
  for (const auto& r : rows) ok += r.nonvanishing ? 1 : 0;
  if (fmt == "json") {
    Json j;
    j["system"] = sys.name;
    j["pattern"] = pattern;
    j["nonvanishing"] = ok;
    j["total"] = static_cast<long>(rows.size());
    j["rows"] = scan_to_json(rows);
    return emit(json_text(j), out);
  }
  if (fmt == "tsv") {
    std::ostringstream os;
    os << "k\to\tnonvanishing\terror\n";
    for (const auto& r : rows)
      os << r.k << "\t" << r.o << "\t" << (r.nonvanishing ? 1 : 0) << "\t" << r.error << "\n";
    return emit(os.str(), out);
  }
  std::ostringstream os;
  os << "system: " << sys.name << "  pattern: " << pattern << "  windows (k, k+1, k+2) for k = "
     << k_min << ".." << k_max << "\n";
  for (const auto& r : rows) {
    os << "k=" << r.k << "  o=" << r.o << "  D " << (r.nonvanishing ? "!= 0" : "= 0");
    if (!r.error.empty()) os << "  [" << r.error << "]";
    os << "\n";
  }
  os << ok << "/" << rows.size() << " nonvanishing\n";
  return emit(os.str(), out);
}

int run_certify(const SystemChoice& choice, std::vector<long> anchors, std::string pattern,
                std::optional<std::pair<BigInt, BigInt>> ab, const std::string& fmt,
                const std::string& out) {
  MahlerSystem sys = choice.load();
  if (pattern.empty()) {
    if (choice.file_path.empty())
      pattern = default_pattern(choice.name);
    else
      throw std::invalid_argument("custom systems need an explicit --pattern");
  }
  if (anchors.empty()) {
    if (choice.file_path.empty())
      anchors = default_anchors(choice.name);
    else
      throw std::invalid_argument("custom systems need explicit --anchors");
  }
  ExponentCertificate cert = certify(sys, pattern, anchors, ab);
  if (fmt == "json") return emit(json_text(certificate_to_json(cert)), out);
  return emit(certificate_text(cert), out);
}

int run_witness(const SystemChoice& choice, long k, std::string pattern, long a, long b,
                long m_max, const std::string& fmt, const std::string& out) {
  MahlerSystem sys = choice.load();
  DegreeTriple deg = resolve_pattern(choice, pattern, k);
  ApproxTriple t = solve(sys, deg);
  GrowthParams growth = growth_params(sys, t);
  std::vector<long> m_range;
  for (long m = 0; m <= m_max; ++m) m_range.push_back(m);

  std::vector<IntegerLinearForm> forms;
  for (long m : m_range) forms.push_back(integer_forms(sys, k, t, m, BigInt(a), BigInt(b), growth));
  DecayReport rep = decay_report(sys, k, t, m_range, BigInt(a), BigInt(b), growth);

  if (fmt == "json") {
    Json j;
    j["system"] = sys.name;
    j["k"] = k;
    j["point"] = std::to_string(a) + "/" + std::to_string(b);
    Json fr = Json::array();
    for (const auto& f : forms) fr.push_back(linear_form_to_json(f));
    j["forms"] = fr;
    j["decay"] = decay_to_json(rep);
    return emit(json_text(j), out);
  }
  if (fmt == "tsv") {
    std::ostringstream os;
    os << "m\tabs_lower\tabs_upper\tempirical_exponent\tpredicted_exponent\n";
    char buf[64];
    for (const auto& row : rep.rows) {
      std::snprintf(buf, sizeof buf, "%.6f", row.empirical);
      os << row.m << "\t" << to_string(row.abs_lo) << "\t" << to_string(row.abs_hi) << "\t"
         << buf << "\t" << to_string(row.predicted) << "\n";
    }
    return emit(os.str(), out);
  }
  std::ostringstream os;
  os << "system: " << sys.name << "  k = " << k << "  point " << a << "/" << b
     << "  lambda = " << to_string(rep.lambda.value)
     << (rep.lambda.exact ? " (exact)" : " (upper bound)") << "  V(k) = " << to_string(rep.V)
     << "\n";
  char buf[64];
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    std::snprintf(buf, sizeof buf, "%.3f", row.empirical);
    os << "m=" << row.m << "  log_b|r| ~ " << buf << "  predicted " << to_string(row.predicted)
       << "  sign-definite " << (row.r.sign_definite() ? "yes" : "NO") << "  coeffs ("
       << forms[i].a_coeff.get_str() << ", " << forms[i].b_coeff.get_str() << ", "
       << forms[i].c_coeff.get_str() << ")\n";
  }
  return emit(os.str(), out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hermite-Pade pipeline for coupled Mahler-type systems"};
  app.require_subcommand(1);

  std::string fmt = "text", out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", fmt, "output format")
        ->check(CLI::IsMember({"json", "tsv", "text"}));
    sub->add_option("-o,--output", out_path,
                    "output file (bare names resolve against MAHLER_OUT_DIR)");
  };

  SystemChoice choice;
  auto add_system_opts = [&](CLI::App* sub, bool required) {
    auto* name = sub->add_option("--system", choice.name, "builtin system name");
    auto* file = sub->add_option("--system-file", choice.file_path, "custom system JSON file");
    name->excludes(file);
    if (required) {
      // exactly one of the two
      sub->callback([&, name, file]() {
        if (name->count() == 0 && file->count() == 0)
          throw CLI::RequiredError("--system or --system-file");
      });
    }
  };

  auto* cmd_list = app.add_subcommand("list", "catalog of built-in systems");
  add_common(cmd_list);

  std::string thm_id, golden_path = mahler::default_golden_path();
  auto* cmd_repro = app.add_subcommand("reproduce", "recompute a reference certificate");
  add_common(cmd_repro);
  cmd_repro->add_option("theorem", thm_id, "target id")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "thm3", "thm4", "thm5"}));
  cmd_repro->add_option("--golden", golden_path, "reference data file");

  long n_order = 32;
  auto* cmd_expand = app.add_subcommand("expand", "series coefficients of the pair");
  add_common(cmd_expand);
  add_system_opts(cmd_expand, true);
  cmd_expand->add_option("--n", n_order, "truncation order");

  long k_value = 0, series_order = -1;
  std::string pattern;
  auto* cmd_approx = app.add_subcommand("approx", "approximation triple at one k");
  add_common(cmd_approx);
  add_system_opts(cmd_approx, true);
  cmd_approx->add_option("--k", k_value, "index k")->required();
  cmd_approx->add_option("--pattern", pattern, "degree pattern id (thm1..thm5)");
  cmd_approx->add_option("--order", series_order, "series order override");

  auto* cmd_det = app.add_subcommand("det", "determinant certificate for (k, k+1, k+2)");
  add_common(cmd_det);
  add_system_opts(cmd_det, true);
  cmd_det->add_option("--k", k_value, "window anchor k")->required();
  cmd_det->add_option("--pattern", pattern, "degree pattern id (thm1..thm5)");

  long k_min = 1, k_max = 50;
  auto* cmd_scan = app.add_subcommand("scan", "determinant scan over anchor range");
  add_common(cmd_scan);
  add_system_opts(cmd_scan, true);
  cmd_scan->add_option("--k-min", k_min, "first anchor");
  cmd_scan->add_option("--k-max", k_max, "last anchor");
  cmd_scan->add_option("--pattern", pattern, "degree pattern id (thm1..thm5)");

  std::vector<long> anchors;
  long a_num = 0, b_den = 0;
  auto* cmd_certify = app.add_subcommand("certify", "full exponent certificate");
  add_common(cmd_certify);
  add_system_opts(cmd_certify, true);
  cmd_certify->add_option("--anchors", anchors, "window anchors k1,k2,...")->delimiter(',');
  cmd_certify->add_option("--pattern", pattern, "degree pattern id (thm1..thm5)");
  cmd_certify->add_option("--a", a_num, "evaluation point numerator (checks the phi orbit)");
  cmd_certify->add_option("--b", b_den, "evaluation point denominator");

  long m_max = 2;
  auto* cmd_witness = app.add_subcommand("witness", "integer forms and decay at a/b");
  add_common(cmd_witness);
  add_system_opts(cmd_witness, true);
  cmd_witness->add_option("--k", k_value, "index k")->required();
  cmd_witness->add_option("--pattern", pattern, "degree pattern id (thm1..thm5)");
  cmd_witness->add_option("--a", a_num, "point numerator")->required();
  cmd_witness->add_option("--b", b_den, "point denominator")->required();
  cmd_witness->add_option("--m-max", m_max, "largest substitution level")->check(CLI::Range(0, 3));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (cmd_list->parsed()) return run_list(fmt, out_path);
    if (cmd_repro->parsed()) return run_reproduce(thm_id, golden_path, fmt, out_path);
    if (cmd_expand->parsed()) return run_expand(choice, n_order, fmt, out_path);
    if (cmd_approx->parsed())
      return run_approx(choice, k_value, pattern, series_order, fmt, out_path);
    if (cmd_det->parsed()) return run_det(choice, k_value, pattern, fmt, out_path);
    if (cmd_scan->parsed()) return run_scan(choice, k_min, k_max, pattern, fmt, out_path);
    if (cmd_certify->parsed()) {
      std::optional<std::pair<BigInt, BigInt>> ab;
      if (a_num != 0 || b_den != 0) {
        if (b_den < 2) throw std::invalid_argument("need --a and --b with 0 < |a| < b, b >= 2");
        ab = std::make_pair(BigInt(a_num), BigInt(b_den));
      }
      return run_certify(choice, anchors, pattern, ab, fmt, out_path);
    }
    if (cmd_witness->parsed())
      return run_witness(choice, k_value, pattern, a_num, b_den, m_max, fmt, out_path);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s: configuration error: %s\n", argv[0], e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: computation failed: %s\n", argv[0], e.what());
    return 2;
  }
  return 3;
}
