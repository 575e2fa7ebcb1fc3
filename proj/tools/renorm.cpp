// Command-line front end: compute free energies, coordinate changes and spectral curves,
// and run the verification suites.

#include "renorm/cache.hpp"
#include "renorm/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>

using namespace renorm;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json poly_json(const Poly& p) {
  ordered_json j = ordered_json::object();
  j["text"] = to_text(p);
  j["terms"] = ordered_json::parse(to_json(p).at("terms").dump());
  return j;
}

Poly maybe_eval_n(const Poly& p, const std::optional<std::string>& n) {
  return n ? evaluate(p, var::N(), Rational::parse(*n)) : p;
}

// ---- compute --------------------------------------------------------------------

struct ComputeArgs {
  std::string model = "1d";
  int genus = 2;
  std::string form = "jw";
  bool latex = false;
  bool factorial = false;
  std::optional<std::string> eval_n;
  std::optional<int> order;
};

/// Free energy in the model's native variables: (v, I) for 1d, hmm and hmm-fat,
/// (w, J) for 2d; genus 0 is the truncated I-polynomial.
Poly native(const ComputeArgs& a) {
  if (a.model == "hmm-fat") {
    if (!a.order || *a.order < 2) throw UsageError("hmm-fat needs --order k with k >= 2");
    return f0k_fat(*a.order);
  }
  if (a.genus < 0) throw UsageError("genus must be >= 0");
  if (a.genus == 1) throw UsageError("genus 1 has the closed form c log(1/(1-I_1)); see --form json");
  if (a.genus == 0) {
    int order = a.order.value_or(a.model == "2d" ? 3 : 2);
    if (a.model == "1d") return f0_1d(order).body();
    if (a.model == "hmm") return f0_1d(order).body() * Poly::var(var::N());
    if (a.model == "2d") {
      if (order < 3) throw UsageError("2d genus 0 needs --order >= 3");
      return f0_2d(order).body();
    }
  }
  if (a.model == "1d") return fg_1d(a.genus);
  if (a.model == "hmm") return fg_hmm(a.genus);
  if (a.model == "2d") return fg_2d(a.genus);
  throw UsageError("unknown model '" + a.model + "'");
}

std::string log_coefficient(const std::string& model) {
  if (model == "1d") return "1/2";
  if (model == "hmm") return "1/2*N^2";
  if (model == "2d") return "1/24";
  throw UsageError("genus 1 is not defined for model '" + model + "'");
}

std::string compute_uncached(const ComputeArgs& a) {
  if (a.genus == 1 && a.model != "hmm-fat") {
    std::string c = log_coefficient(a.model);
    if (a.form == "json")
      return dump(ordered_json{{"model", a.model}, {"genus", 1}, {"log_coefficient", c}, {"argument", "1/(1-I1)"}});
    return c + "*log(1/(1-I1))\n";
  }
  Poly f = native(a);
  bool two_d = a.model == "2d" && a.genus >= 2;
  std::string form = a.latex ? "latex" : a.form;
  Poly shown = f;
  bool tilde = false;
  if (form == "tilde") {
    if (a.genus == 0) throw UsageError("the tilde form exists for genus >= 2 and fat order >= 2");
    shown = two_d ? j_to_i_tilde(f) : to_tilde(f, a.factorial ? Tilde::factorial : Tilde::plain);
    tilde = true;
  } else if (form == "iv") {
    if (two_d) shown = j_to_iv(f);
  } else if (form != "jw" && form != "latex" && form != "json") {
    throw UsageError("unknown form '" + a.form + "'");
  }
  shown = maybe_eval_n(shown, a.eval_n);
  if (form == "latex") return to_latex(shown, {tilde}) + "\n";
  if (form == "json") {
    ordered_json j{{"model", a.model}, {"genus", a.genus}};
    if (a.order) j["order"] = *a.order;
    j["engine"] = engine_hash();
    j["free_energy"] = poly_json(shown);
    if (a.model == "2d" && a.genus >= 2) {
      ordered_json c = ordered_json::object();
      for (auto& [pat, val] : correlators_2d(a.genus)) c[pattern_text(pat)] = to_text(val);
      j["correlators"] = c;
    }
    return dump(j);
  }
  return to_text(shown) + "\n";
}

int run_compute(const ComputeArgs& a) {
  std::string key = "compute|" + a.model + "|" + std::to_string(a.genus) + "|" + a.form + "|" +
                    std::to_string(a.latex) + "|" + std::to_string(a.factorial) + "|" + a.eval_n.value_or("-") + "|" +
                    (a.order ? std::to_string(*a.order) : "-");
  auto cache = DiskCache::from_env();
  if (cache)
    if (auto hit = cache->load(key)) {
      std::cout << *hit;
      return kExitOk;
    }
  std::string out = compute_uncached(a);
  if (cache) cache->store(key, out);
  std::cout << out;
  return kExitOk;
}

// ---- transform ------------------------------------------------------------------

struct TransformArgs {
  std::string what = "i0";
  int n = 0;
  std::optional<int> max_var;
  int max_deg = 3;
  bool at_i0_zero = false;
  bool json = false;
};

int run_transform(const TransformArgs& a) {
  if (a.max_deg < 1) throw UsageError("--max-deg must be >= 1");
  if (a.n < 0) throw UsageError("--n must be >= 0");
  TPolicy pol{a.max_var.value_or(std::max(a.max_deg, a.n)), a.max_deg};
  if (pol.max_index < 0) throw UsageError("--max-var must be >= 0");
  Poly r;
  if (a.what == "i0") r = i0_series(pol).body();
  else if (a.what == "I") r = i_from_t(a.n, pol).body();
  else if (a.what == "t") r = t_from_i(a.n, pol).body();
  else if (a.what == "ghost") {
    if (a.n < 1) throw UsageError("ghost couplings start at --n 1");
    r = ghost_from_t(a.n, pol).body();
  } else throw UsageError("unknown transform '" + a.what + "'");
  if (a.at_i0_zero) r = evaluate(r, var::I(0), Rational(0));
  if (a.json)
    std::cout << dump(ordered_json{{"what", a.what}, {"n", a.n}, {"max_var", pol.max_index},
                                   {"max_deg", pol.max_factors}, {"series", poly_json(r)}});
  else
    std::cout << to_text(r) << "\n";
  return kExitOk;
}

// ---- curve ----------------------------------------------------------------------

struct CurveArgs {
  std::string model = "1d";
  std::string coords = "t";
  std::string orders = "-6..6";
  int max_var = 3;
  int max_deg = 4;
  int K = 3;
};

CurveModel curve_model(const std::string& m) {
  if (m == "1d") return CurveModel::one_d;
  if (m == "hmm") return CurveModel::hmm_thin;
  if (m == "hmm-fat") return CurveModel::hmm_fat;
  if (m == "2d") return CurveModel::two_d;
  throw UsageError("unknown curve model '" + m + "'");
}

Window parse_orders(const std::string& s) {
  static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  std::smatch mt;
  if (!std::regex_match(s, mt, re)) throw UsageError("--orders expects a..b, e.g. -6..6");
  Window w{2 * std::stoi(mt[1]), 2 * std::stoi(mt[2])};
  if (w.lo2 > w.hi2) throw UsageError("--orders: empty range");
  return w;
}

int run_curve(const CurveArgs& a) {
  if (a.max_deg < 1 || a.max_var < 0) throw UsageError("need --max-deg >= 1 and --max-var >= 0");
  CurveModel m = curve_model(a.model);
  Window w = parse_orders(a.orders);
  TPolicy pol{a.max_var, a.max_deg};
  std::map<int, Poly> coeffs;
  std::string variable;
  if (a.coords == "t") {
    coeffs = curve_t_form(m, pol, w, a.K);
    variable = "z";
  } else if (a.coords == "i") {
    CurveSeries c = curve_i_form(m, a.max_var, a.K);
    for (int e2 : c.exponents())
      if (w.contains(e2)) coeffs[e2] = c.coefficient(e2);
    variable = "zeta";
  } else {
    throw UsageError("--coords is t or i");
  }
  ordered_json j{{"model", a.model}, {"coords", a.coords}, {"variable", variable},
                 {"unit", m == CurveModel::two_d ? "1" : "sqrt(2)"}};
  ordered_json cs = ordered_json::array();
  for (auto& [e2, p] : coeffs)
    cs.push_back({{"exponent", e2 % 2 == 0 ? std::to_string(e2 / 2) : std::to_string(e2) + "/2"}, {"coefficient", to_text(p)}});
  j["coefficients"] = cs;
  std::cout << dump(j);
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::string report;
  std::string fault;
};

std::vector<Check> run_suite(const std::string& name, const Faults& faults) {
  std::vector<Check> out;
  auto append = [&](std::vector<Check> cs) { out.insert(out.end(), cs.begin(), cs.end()); };
  if (name == "tables") {
    append(table_check(faults));
    append(collapse_checks());
    append(f0_2d_agreement({4, 6}));
    out.push_back(roundtrip_check({4, 5}));
  } else if (name == "virasoro") {
    append(virasoro_suite({5, 5}, faults));
  } else if (name == "homogeneity") {
    append(homogeneity_audit(4, faults));
  } else if (name == "curves") {
    append(curve_suite({3, 4}, Window{}));
  } else {
    throw UsageError("unknown suite '" + name + "'");
  }
  return out;
}

int run_verify(const VerifyArgs& a) {
  Faults faults;
  try {
    faults = fault_by_name(a.fault);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<std::string> suites =
      a.suite == "all" ? std::vector<std::string>{"tables", "virasoro", "homogeneity", "curves"}
                       : std::vector<std::string>{a.suite};
  ordered_json report{{"engine", engine_hash()}, {"fault", a.fault.empty() ? "none" : a.fault}};
  ordered_json js = ordered_json::object();
  bool ok = true;
  for (auto& s : suites) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Check> cs = run_suite(s, faults);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ordered_json checks = ordered_json::array();
    for (auto& c : cs) {
      ordered_json cj{{"label", c.label}, {"pass", c.pass}};
      if (c.first)
        cj["first_difference"] = {{"monomial", c.first->first.is_one() ? "1" : to_text(c.first->first)},
                                  {"value", c.first->second.str()}};
      if (!c.detail.empty()) cj["detail"] = c.detail;
      checks.push_back(cj);
      std::cout << c.describe() << "\n";
    }
    bool pass = all_pass(cs);
    ok = ok && pass;
    js[s] = {{"pass", pass}, {"checks", checks}};
    std::cerr << s << ": " << (pass ? "pass" : "FAIL") << " (" << cs.size() << " checks, " << secs << " s)\n";
  }
  report["suites"] = js;
  report["pass"] = ok;
  if (!a.report.empty()) {
    std::ofstream out(a.report, std::ios::binary);
    if (!out) throw UsageError("cannot write report to " + a.report);
    out << dump(report);
  }
  return ok ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renormalized free energies, coordinate changes and spectral curves"};
  app.require_subcommand(1);

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "free energy of one model at one genus");
  compute->add_option("--model", ca.model, "1d, hmm, hmm-fat or 2d")
      ->check(CLI::IsMember({"1d", "hmm", "hmm-fat", "2d"}));
  compute->add_option("--genus", ca.genus, "genus (ignored for hmm-fat)");
  compute->add_option("--form", ca.form, "jw, iv, tilde, latex or json")
      ->check(CLI::IsMember({"jw", "iv", "tilde", "latex", "json"}));
  compute->add_flag("--latex", ca.latex, "same as --form latex");
  compute->add_flag("--factorial", ca.factorial, "tilde variables with the factorial normalization");
  compute->add_option("--eval-N", ca.eval_n, "substitute a rational value for N");
  compute->add_option("--order", ca.order, "truncation order at genus 0, 't Hooft order for hmm-fat");

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "coordinate changes between t and I");
  transform->add_option("--what", ta.what, "i0, I, t or ghost")->check(CLI::IsMember({"i0", "I", "t", "ghost"}));
  transform->add_option("--n", ta.n, "index");
  transform->add_option("--max-var", ta.max_var, "largest coupling index kept");
  transform->add_option("--max-deg", ta.max_deg, "largest number of factors kept");
  transform->add_flag("--at-i0-zero", ta.at_i0_zero, "set I_0 = 0 in the result");
  transform->add_flag("--json", ta.json, "JSON output");

  CurveArgs cv;
  auto* curve = app.add_subcommand("curve", "spectral curve coefficients");
  curve->add_option("--model", cv.model, "1d, hmm, hmm-fat or 2d");
  curve->add_option("--coords", cv.coords, "t (expansion in z) or i (expansion in z - I_0)");
  curve->add_option("--orders", cv.orders, "exponent range a..b");
  curve->add_option("--max-var", cv.max_var, "largest coupling index kept");
  curve->add_option("--max-deg", cv.max_deg, "largest number of factors kept");
  curve->add_option("--K", cv.K, "'t Hooft order of the fat model");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", va.suite, "tables, virasoro, homogeneity, curves or all")
      ->check(CLI::IsMember({"tables", "virasoro", "homogeneity", "curves", "all"}));
  verify->add_option("--report", va.report, "write a JSON report here");
  verify->add_option("--inject-fault", va.fault, "plant a fault: 1d-f2, hmm-f2, fat-f2, 2d-f2 or degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compute) return run_compute(ca);
    if (*transform) return run_transform(ta);
    if (*curve) return run_curve(cv);
    if (*verify) return run_verify(va);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitUsage;
}
