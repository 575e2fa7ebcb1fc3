#pragma once

#include "renorm/coords.hpp"
#include "renorm/engine_1d.hpp"
#include "renorm/engine_2d.hpp"
#include "renorm/engine_hmm.hpp"
#include "renorm/report.hpp"
#include "renorm/spectral.hpp"
#include "renorm/tables.hpp"
#include "renorm/tilde.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace renorm {

enum class Model { one_d, hmm_thin, hmm_fat, two_d };

inline std::string model_name(Model m) {
  switch (m) {
    case Model::one_d: return "1d";
    case Model::hmm_thin: return "hmm";
    case Model::hmm_fat: return "hmm-fat";
    case Model::two_d: return "2d";
  }
  return "?";
}

/// One genus-split Virasoro constraint evaluated in t-space.
struct ResidualReport {
  Model model;
  int m = 0;
  int g = 0;
  Poly residual;
  bool pass = true;

  std::string label() const {
    return model_name(model) + " L_" + std::to_string(m) + " genus " + std::to_string(g);
  }
  Check to_check() const {
    Check c = check_zero(label(), residual);
    return c;
  }
};

/// Replacement free energies for mutation tests: genus (or 't Hooft order for the fat
/// model) -> polynomial used instead of the engine's output.
using Overrides = std::map<int, Poly>;

/// Planted faults per model, used to demonstrate that each suite can fail.
struct Faults {
  std::map<Model, Overrides> by_model;

  const Overrides& of(Model m) const {
    static const Overrides none;
    auto it = by_model.find(m);
    return it == by_model.end() ? none : it->second;
  }
  bool empty() const { return by_model.empty(); }
};

/// Named faults: "1d-f2", "hmm-f2", "fat-f2", "2d-f2" shift one coefficient of the genus-two
/// (or order-two) free energy; "degree" plants a term of the wrong weighted degree in 1D F_2.
inline Faults fault_by_name(const std::string& name);

namespace detail {

inline Poly override_or(const Overrides& o, int g, const Poly& fallback) {
  auto it = o.find(g);
  return it == o.end() ? fallback : it->second;
}

/// Genus-split free energies as t-series under `wide`, for g = 0..g_max. For the fat model
/// entry 0 holds the whole genus-zero series through 't Hooft order K.
inline std::vector<Poly> genus_series(Model model, int g_max, const TPolicy& wide, const Overrides& o, int K) {
  std::vector<Poly> f;
  Poly n = Poly::var(var::N());
  switch (model) {
    case Model::one_d:
      f.push_back(to_t_series(f0_1d_poly(wide), wide).body());
      if (g_max >= 1) f.push_back((log_v_series(wide) * Rational(1, 2)).body());
      for (int g = 2; g <= g_max; ++g) f.push_back(to_t_series(override_or(o, g, fg_1d(g)), wide).body());
      break;
    case Model::hmm_thin:
      f.push_back(to_t_series(f0_1d_poly(wide) * n, wide).body());
      if (g_max >= 1) f.push_back(log_v_series(wide).times(n * n * Rational(1, 2)).body());
      for (int g = 2; g <= g_max; ++g) f.push_back(to_t_series(override_or(o, g, fg_hmm(g)), wide).body());
      break;
    case Model::hmm_fat: {
      Poly th = Poly::var(var::tH());
      Poly total = to_t_series(f0_1d_poly(wide) * th, wide).body();
      if (K >= 1) total += log_v_series(wide).times(th * th * Rational(1, 2)).body();
      for (int k = 2; k <= K; ++k) total += to_t_series(override_or(o, k, f0k_fat(k)) * th.pow(k + 1), wide).body();
      f.push_back(total);
      break;
    }
    case Model::two_d:
      f.push_back(to_t_series(f0_2d_poly(wide), wide).body());
      if (g_max >= 1) f.push_back((log_v_series(wide) * Rational(1, 24)).body());
      for (int g = 2; g <= g_max; ++g) f.push_back(to_t_series(override_or(o, g, fg_2d(g)), wide).body());
      break;
  }
  return f;
}

/// Residual accumulator truncating every contribution to the target policy.
class Residual {
 public:
  Residual(SeriesPolicy target, std::function<bool(const Monomial&)> extra = {})
      : target_(std::move(target)), extra_(std::move(extra)) {}

  bool keep(const Monomial& m) const { return target_.admits(m) && (!extra_ || extra_(m)); }

  void add(const Poly& p, const Rational& c = Rational(1)) {
    for (auto& [m, k] : p)
      if (keep(m)) r_.add_term(m, k * c);
  }
  void add_product(const Poly& a, const Poly& b, const Rational& c) {
    add(Poly::multiply(a, b, [&](const Monomial& m) { return keep(m); }), c);
  }
  const Poly& value() const { return r_; }

 private:
  SeriesPolicy target_;
  std::function<bool(const Monomial&)> extra_;
  Poly r_;
};

inline Poly d(const Poly& f, int k) { return partial_raw(f, var::t(k)); }

}  // namespace detail

/// Genus-split Virasoro residuals L_m, m = -1..m_max, g = 0..g_max, computed in t-variables
/// under the truncation `pol` (indices <= M, at most D factors). Each free energy is
/// expanded with probe directions up to M + m_max so the needed derivatives survive.
/// For the fat model g_max is ignored and the 't Hooft order K bounds the check.
inline std::vector<ResidualReport> virasoro_residuals(Model model, int m_max, int g_max, const TPolicy& pol,
                                                      const Overrides& o = {}, int K = 3) {
  const int M = pol.max_index;
  const int D = pol.max_factors;
  const int probe_top = m_max + std::max(M, 1);
  TPolicy wide{M, D + 2, probe_top, probe_top > M ? 1 : 0};
  const int gm = model == Model::hmm_fat ? 0 : g_max;
  std::vector<Poly> F = detail::genus_series(model, gm, wide, o, K);
  auto Fg = [&](int g) -> const Poly& {
    static const Poly zero;
    return g < 0 || g > gm ? zero : F[g];
  };
  SeriesPolicy target = pol.without_probes().series();
  std::function<bool(const Monomial&)> extra;
  if (model == Model::hmm_fat) extra = [K](const Monomial& m) { return m.exponent(var::tH()) <= K + 1; };

  using detail::d;
  Poly nvar = Poly::var(var::N());
  Poly th = Poly::var(var::tH());
  std::vector<ResidualReport> out;
  for (int g = 0; g <= gm; ++g) {
    for (int m = -1; m <= m_max; ++m) {
      detail::Residual r(target, extra);
      const Poly& f = Fg(g);
      // linear part sum_n c(m, n) (t_n - delta_{n,1}) d_{m+n} F_g
      auto lin_coeff = [&](int n) -> Rational {
        if (model == Model::two_d) return odd_double_factorial(n + m) / odd_double_factorial(n - 1);
        return factorial(m + n + 1) / factorial(n);
      };
      for (int n = std::max(0, -m); n <= M; ++n) r.add(Poly::var(var::t(n)) * d(f, m + n), lin_coeff(n));
      r.add(d(f, m + 1), -lin_coeff(1));

      switch (model) {
        case Model::one_d:
          if (m == -1 && g == 0) r.add(Poly::var(var::t(0)));
          if (m == 0 && g == 1) r.add(Poly(Rational(1)));
          if (m >= 1) r.add(d(Fg(g - 1), m - 1), factorial(m + 1));
          break;
        case Model::hmm_thin:
          if (m == -1 && g == 0) r.add(nvar * Poly::var(var::t(0)));
          if (m == 0 && g == 1) r.add(nvar * nvar);
          if (m >= 1) {
            r.add(nvar * d(Fg(g - 1), m - 1), Rational(2) * factorial(m));
            for (int k = 1; k <= m - 1; ++k) {
              Rational c = factorial(k) * factorial(m - k);
              for (int g1 = 0; g1 <= g - 1; ++g1) r.add_product(d(Fg(g1), k - 1), d(Fg(g - 1 - g1), m - k - 1), c);
              r.add(d(d(Fg(g - 2), k - 1), m - k - 1), c);
            }
          }
          break;
        case Model::hmm_fat:
          if (m == -1) r.add(th * Poly::var(var::t(0)));
          if (m == 0) r.add(th * th);
          if (m >= 1) {
            r.add(th * d(f, m - 1), Rational(2) * factorial(m));
            for (int k = 1; k <= m - 1; ++k) r.add_product(d(f, k - 1), d(f, m - k - 1), factorial(k) * factorial(m - k));
          }
          break;
        case Model::two_d:
          if (m == -1 && g == 0) r.add(Poly::var(var::t(0), 2), Rational(1, 2));
          if (m == 0 && g == 1) r.add(Poly(Rational(1, 8)));
          if (m >= 1) {
            for (int k = 0; k <= m - 1; ++k) {
              int l = m - 1 - k;
              Rational c = odd_double_factorial(k) * odd_double_factorial(l) * Rational(1, 2);
              r.add(d(d(Fg(g - 1), k), l), c);
              for (int g1 = 0; g1 <= g; ++g1) r.add_product(d(Fg(g1), k), d(Fg(g - g1), l), c);
            }
          }
          break;
      }
      out.push_back({model, m, g, r.value(), r.value().is_zero()});
    }
  }
  return out;
}

/// Engine output, or its planted replacement.
inline Poly free_energy(Model model, int g, const Faults& faults = {}) {
  switch (model) {
    case Model::one_d: return detail::override_or(faults.of(model), g, fg_1d(g));
    case Model::hmm_thin: return detail::override_or(faults.of(model), g, fg_hmm(g));
    case Model::hmm_fat: return detail::override_or(faults.of(model), g, f0k_fat(g));
    case Model::two_d: return detail::override_or(faults.of(model), g, fg_2d(g));
  }
  throw std::logic_error("unknown model");
}

inline Faults fault_by_name(const std::string& name) {
  Faults f;
  if (name.empty() || name == "none") return f;
  if (name == "1d-f2") f.by_model[Model::one_d][2] = fg_1d(2) + parse_text("v^3*I2^2");
  else if (name == "hmm-f2") f.by_model[Model::hmm_thin][2] = fg_hmm(2) + parse_text("N*v^2*I3");
  else if (name == "fat-f2") f.by_model[Model::hmm_fat][2] = f0k_fat(2) + parse_text("v^2*I3");
  else if (name == "2d-f2") f.by_model[Model::two_d][2] = fg_2d(2) + parse_text("w^3*J4");
  else if (name == "degree") f.by_model[Model::one_d][2] = fg_1d(2) + parse_text("v*I2");
  else throw std::invalid_argument("unknown fault '" + name + "'");
  return f;
}

/// Equality of every computed free energy with the embedded closed forms.
inline std::vector<Check> table_check(const Faults& faults = {}) {
  std::vector<Check> out;
  auto F = [&](Model m, int g) { return free_energy(m, g, faults); };
  for (int g = 2; g <= 4; ++g)
    out.push_back(check_equal("1D F" + std::to_string(g), F(Model::one_d, g), tables::one_d(g)));
  out.push_back(check_equal("HMM F2", F(Model::hmm_thin, 2), tables::hmm(2)));
  for (int g = 3; g <= 4; ++g)
    out.push_back(check_equal("HMM F" + std::to_string(g) + " (factorial tilde)",
                              to_tilde(F(Model::hmm_thin, g), Tilde::factorial), tables::hmm(g)));
  out.push_back(check_equal("fat F0,1 dF/dI1", partials_fat(1).partial(1), Poly::var(var::v()) * Rational(1, 2)));
  for (int k = 2; k <= 4; ++k)
    out.push_back(check_equal("fat F0," + std::to_string(k), F(Model::hmm_fat, k), tables::fat(k)));
  out.push_back(check_equal("2D F2 (w,J)", F(Model::two_d, 2), tables::two_d_jw()));
  for (int g = 2; g <= 4; ++g)
    out.push_back(
        check_equal("2D F" + std::to_string(g) + " (tilde)", j_to_i_tilde(F(Model::two_d, g)), tables::two_d_tilde(g)));
  return out;
}

/// F^N_g at N = 1 equals F^{1D}_g, and the top power of N gives the fat tower.
inline std::vector<Check> collapse_checks(int g_max = 4) {
  std::vector<Check> out;
  for (int g = 2; g <= g_max; ++g) {
    out.push_back(check_equal("HMM F" + std::to_string(g) + " at N=1 vs 1D", evaluate(fg_hmm(g), var::N(), Rational(1)),
                              fg_1d(g)));
    out.push_back(check_equal("top N-power of HMM F" + std::to_string(g) + " vs fat F0," + std::to_string(g),
                              coefficient_of(fg_hmm(g), var::N(), g + 1), f0k_fat(g)));
  }
  return out;
}

/// Weighted degree of every term, recomputed from the exponents: sum (k-1) e_k over
/// I- and J-factors must equal `degree`.
inline Check homogeneity_check(const std::string& label, const Poly& p, int degree) {
  for (auto& [m, c] : p) {
    int deg = 0;
    for (auto& [x, e] : m.entries())
      if (x.family == Family::I || x.family == Family::J) deg += (x.index - 1) * e;
    if (deg != degree) {
      Check ch{label, false, std::make_pair(m, c)};
      ch.detail = "degree " + std::to_string(deg) + ", expected " + std::to_string(degree);
      return ch;
    }
  }
  return {label, true, {}, {}};
}

inline std::vector<Check> homogeneity_audit(int g_max = 4, const Faults& faults = {}) {
  std::vector<Check> out;
  for (int g = 2; g <= g_max; ++g) {
    std::string s = std::to_string(g);
    out.push_back(homogeneity_check("1D F" + s, free_energy(Model::one_d, g, faults), 2 * g - 2));
    out.push_back(homogeneity_check("HMM F" + s, free_energy(Model::hmm_thin, g, faults), 2 * g - 2));
    out.push_back(homogeneity_check("fat F0," + s, free_energy(Model::hmm_fat, g, faults), 2 * g - 2));
    out.push_back(homogeneity_check("2D F" + s, free_energy(Model::two_d, g, faults), 3 * g - 3));
  }
  return out;
}

/// All genus-split residuals of the acceptance configuration, as checks.
inline std::vector<Check> virasoro_suite(const TPolicy& pol = {5, 5}, const Faults& faults = {}) {
  std::vector<Check> out;
  const std::tuple<Model, int, int> runs[] = {
      {Model::one_d, 4, 3}, {Model::hmm_thin, 3, 2}, {Model::hmm_fat, 3, 0}, {Model::two_d, 3, 2}};
  for (auto& [model, m_max, g_max] : runs)
    for (auto& r : virasoro_residuals(model, m_max, g_max, pol, faults.of(model))) out.push_back(r.to_check());
  return out;
}

/// Curve identities for every model at truncation `pol` over `w`.
inline std::vector<Check> curve_suite(const TPolicy& pol, const Window& w, int K = 3) {
  std::vector<Check> out;
  const std::pair<CurveModel, std::string> models[] = {{CurveModel::one_d, "1D"},
                                                       {CurveModel::hmm_thin, "HMM thin"},
                                                       {CurveModel::hmm_fat, "HMM fat"},
                                                       {CurveModel::two_d, "2D"}};
  for (auto& [cm, name] : models) {
    Check c = curve_form_check(cm, pol, w, K);
    c.label = name + ": " + c.label;
    out.push_back(c);
    for (Check b : base_checks(cm, pol, w, K)) {
      b.label = name + ": " + b.label;
      out.push_back(b);
    }
    if (cm == CurveModel::hmm_fat) continue;
    for (Check a : action_checks(cm, pol.max_index + 2)) {
      a.label = name + ": " + a.label;
      out.push_back(a);
    }
  }
  Check u = check_equal("2D: unified form", curve_2d_unified(pol.max_index).body, curve_2d_i(pol.max_index).body);
  out.push_back(u);
  return out;
}

}  // namespace renorm
