#pragma once

#include "renorm/coords.hpp"
#include "renorm/engine_1d.hpp"
#include "renorm/engine_2d.hpp"
#include "renorm/engine_hmm.hpp"
#include "renorm/report.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace renorm {

/// Which variable the zeta slot of a curve stands for.
enum class CurveVar { z, zeta };

/// Formal unit multiplying every coefficient: 1D and matrix-model curves are odd in sqrt(2)
/// throughout, so only the coefficient of sqrt(2) is stored. 2D curves are rational.
enum class CurveUnit { one, sqrt2 };

enum class CurveModel { one_d, hmm_thin, hmm_fat, two_d };

/// Laurent or Puiseux series in z or zeta = z - I_0. The expansion variable is stored as the
/// zeta family with doubled exponents; the remaining variables form the coefficients.
struct CurveSeries {
  Poly body;
  CurveVar var = CurveVar::zeta;
  CurveUnit unit = CurveUnit::sqrt2;

  /// Coefficient of (expansion variable)^{twice/2}.
  Poly coefficient(int twice) const { return coefficient_of(body, var::zeta(), twice); }

  /// Doubled exponents present, ascending.
  std::vector<int> exponents() const {
    std::set<int> s;
    for (auto& [m, c] : body) s.insert(m.zeta2());
    return {s.begin(), s.end()};
  }
};

/// Doubled exponent window [lo2, hi2].
struct Window {
  int lo2 = -12;
  int hi2 = 12;
  bool contains(int e2) const { return e2 >= lo2 && e2 <= hi2; }
};

/// Gamma(k + 1/2) / sqrt(pi), exact.
inline Rational gamma_half(int k) {
  Rational g(1);
  if (k >= 0) {
    for (int j = 0; j < k; ++j) g *= Rational(2 * j + 1, 2);
  } else {
    for (int j = 0; j > k; --j) g /= Rational(2 * j - 1, 2);
  }
  return g;
}

/// Rewrites v I_1 as v - 1 until no monomial carries both, giving a normal form for
/// expressions in v = 1/(1 - I_1) and I_1.
inline Poly normalize_v(const Poly& p) {
  std::vector<std::pair<Monomial, Rational>> work(p.begin(), p.end());
  Poly r;
  const VarId v = var::v();
  const VarId i1 = var::I(1);
  while (!work.empty()) {
    auto [m, c] = work.back();
    work.pop_back();
    if (m.exponent(v) > 0 && m.exponent(i1) > 0) {
      Monomial base = m.shifted(i1, -1);
      work.emplace_back(base, c);
      work.emplace_back(base.shifted(v, -1), -c);
    } else {
      r.add_term(m, c);
    }
  }
  return r;
}

namespace detail {

inline Poly zeta_pow(int twice) { return Poly::var(var::zeta(), twice); }

/// 1/sqrt(2) as a multiple of sqrt(2).
inline const Rational kInvSqrt2 = Rational(1, 2);

/// sum_{n=1}^{top} (I_n - delta_{n,1})/n! zeta^n / sqrt(2), as a coefficient of sqrt(2).
inline Poly catalan_tail(int top) {
  Poly r;
  for (int n = 1; n <= top; ++n) {
    Poly in = Poly::var(var::I(n));
    if (n == 1) in -= Poly(Rational(1));
    r += in * zeta_pow(2 * n) * (kInvSqrt2 / factorial(n));
  }
  if (top < 1) r -= zeta_pow(2) * kInvSqrt2;
  return r;
}

}  // namespace detail

/// 1D or thin matrix-model curve in I-coordinates:
///   pole * sqrt(2)/(z - I_0) + sum_{n>=1} (I_n - delta_{n,1})/n! (z - I_0)^n / sqrt(2),
/// with pole = 1 or N.
inline CurveSeries curve_pole_i(const Poly& pole, int top) {
  return {pole * detail::zeta_pow(-2) + detail::catalan_tail(top), CurveVar::zeta, CurveUnit::sqrt2};
}

inline CurveSeries curve_1d_i(int top) { return curve_pole_i(Poly(Rational(1)), top); }
inline CurveSeries curve_hmm_thin_i(int top) { return curve_pole_i(Poly::var(var::N()), top); }

/// Fat curve in I-coordinates through 't Hooft order K (F~ = sum_{k=1}^{K} tH^{k+1} F^t_{0,k}):
///   sqrt(2) tH/(z - I_0) + catalan tail
///   + sqrt(2) [ v d_X(F~) (z - I_0)^{-2} + sum_{l>=1} (l+1)! dF~/dI_l (z - I_0)^{-l-2} ].
inline CurveSeries curve_hmm_fat_i(int top, int K) {
  CurveSeries c = curve_pole_i(Poly::var(var::tH()), top);
  for (int k = 1; k <= K; ++k) {
    const Partials& f = partials_fat(k);
    Poly th = Poly::var(var::tH(), k + 1);
    c.body += th * Poly::var(var::v()) * dx_restricted(f) * detail::zeta_pow(-4);
    for (int l = 1; l <= f.support(); ++l) c.body += th * f.partial(l) * detail::zeta_pow(-2 * l - 4) * factorial(l + 1);
  }
  return c;
}

/// 2D curve in I-coordinates:
///   (z - I_0)^{1/2} - 1/(2 sqrt(pi)) sum_{n>=1} (-1)^n I_n Gamma(1/2 - n) (z - I_0)^{n-1/2}.
inline CurveSeries curve_2d_i(int top) {
  Poly r = detail::zeta_pow(1);
  for (int n = 1; n <= top; ++n)
    r -= Poly::var(var::I(n)) * detail::zeta_pow(2 * n - 1) * (pow(Rational(-1), n) * gamma_half(-n) / Rational(2));
  return {r, CurveVar::zeta, CurveUnit::one};
}

/// The same curve in the form -sqrt(pi)/2 sum_{n>=1} (I_n - delta_{n,1})/Gamma(n+1/2) (z - I_0)^{n-1/2}.
inline CurveSeries curve_2d_unified(int top) {
  Poly r;
  for (int n = 1; n <= std::max(top, 1); ++n) {
    Poly in = n <= top ? Poly::var(var::I(n)) : Poly{};
    if (n == 1) in -= Poly(Rational(1));
    r -= in * detail::zeta_pow(2 * n - 1) * (Rational(1, 2) / gamma_half(n));
  }
  return {r, CurveVar::zeta, CurveUnit::one};
}

/// Genus-zero 1D free energy sum_k (-1)^k/(k+1)! (I_k + delta_{k,1}) I_0^{k+1} for a policy.
inline Poly f0_1d_poly(const TPolicy& pol) {
  Poly f;
  for (int k = 0; k <= pol.top_index() && k + 1 <= pol.max_factors; ++k) {
    Poly ik = Poly::var(var::I(k));
    if (k == 1) ik += Poly(Rational(1));
    f += ik * Poly::var(var::I(0), k + 1) * (pow(Rational(-1), k) / factorial(k + 1));
  }
  return detail::keep_for(f, pol);
}

/// Largest coupling index whose derivative reaches the window in a t-form curve.
inline int probe_reach(CurveModel model, const Window& w) {
  // 1D type: n!/z^{n+1} dF/dt_{n-1}; 2D: z^{-n-3/2} dF/dt_n
  if (model == CurveModel::two_d) return (-w.lo2 - 3) / 2;
  return -w.lo2 / 2 - 2;
}

/// Genus-zero free energy of a model as a t-series with probes up to `probe` (degree one).
inline TruncatedSeries f0_t_series(CurveModel model, const TPolicy& pol, int K = 0) {
  switch (model) {
    case CurveModel::one_d: return to_t_series(f0_1d_poly(pol), pol);
    case CurveModel::hmm_thin: return to_t_series(f0_1d_poly(pol) * Poly::var(var::N()), pol);
    case CurveModel::hmm_fat: {
      TruncatedSeries f = to_t_series(f0_1d_poly(pol) * Poly::var(var::tH()), pol);
      if (K >= 1) f += log_v_series(pol).times(Poly::var(var::tH(), 2)) * Rational(1, 2);
      for (int k = 2; k <= K; ++k) f += to_t_series(f0k_fat(k) * Poly::var(var::tH(), k + 1), pol);
      return f;
    }
    case CurveModel::two_d: return to_t_series(f0_2d_poly(pol), pol);
  }
  throw std::logic_error("unknown model");
}

/// t-form curve coefficients, doubled exponent -> t-polynomial (for 1D-type models the
/// coefficient of sqrt(2)), at truncation (M, D) over the window.
inline std::map<int, Poly> curve_t_form(CurveModel model, const TPolicy& pol, const Window& w, int K = 0) {
  const int probe = std::max(probe_reach(model, w), pol.max_index);
  TPolicy wide{pol.max_index, pol.max_factors + 1, probe, probe > pol.max_index ? 1 : 0};
  SeriesPolicy target = pol.series();
  TruncatedSeries f0 = f0_t_series(model, wide, K);
  auto dF = [&](int k) { return truncate(partial_raw(f0.body(), var::t(k)), target); };

  std::map<int, Poly> out;
  auto add = [&](int e2, const Poly& p) {
    if (w.contains(e2) && !p.is_zero()) out[e2] += p;
  };
  if (model == CurveModel::two_d) {
    add(1, Poly(Rational(1)));
    for (int n = 0; n <= pol.max_index; ++n)
      add(2 * n - 1, Poly::var(var::t(n)) * (-pow(Rational(-1), n) * gamma_half(-n) / Rational(2)));
    for (int n = 0; 2 * (-n) - 3 >= w.lo2; ++n) add(-2 * n - 3, dF(n) * (-gamma_half(n + 1) / Rational(2)));
  } else {
    Poly pole = model == CurveModel::one_d    ? Poly(Rational(1))
                : model == CurveModel::hmm_thin ? Poly::var(var::N())
                                                : Poly::var(var::tH());
    for (int n = 0; n <= std::max(pol.max_index, 1); ++n) {
      Poly tn = n <= pol.max_index ? Poly::var(var::t(n)) : Poly{};
      if (n == 1) tn -= Poly(Rational(1));
      add(2 * n, tn * (detail::kInvSqrt2 / factorial(n)));
    }
    add(-2, pole);
    for (int n = 1; -2 * n - 2 >= w.lo2; ++n) add(-2 * n - 2, dF(n - 1) * factorial(n));
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

/// Expands an I-form curve in powers of z, (z - I_0)^e = sum_k binom(e, k) (-I_0)^k z^{e-k},
/// and rewrites every coefficient as a t-series under `pol`.
inline std::map<int, Poly> expand_in_z(const CurveSeries& c, const TPolicy& pol, const Window& w) {
  if (c.var != CurveVar::zeta) throw std::invalid_argument("expand_in_z needs a curve in z - I_0");
  std::map<int, Poly> in_i;
  for (int e2 : c.exponents()) {
    Poly coef = c.coefficient(e2);
    Rational e(e2, 2);
    for (int k = 0; k <= pol.max_factors; ++k) {
      int target = e2 - 2 * k;
      if (target < w.lo2) break;
      if (target > w.hi2) continue;
      in_i[target] += coef * Poly::var(var::I(0), k) * (binomial(e, k) * pow(Rational(-1), k));
    }
  }
  std::map<int, Poly> out;
  for (auto& [e2, p] : in_i) {
    Poly t = to_t_series(p, pol).body();
    if (!t.is_zero()) out[e2] = t;
  }
  return out;
}

/// Compares two coefficient maps over the window.
inline Check compare_curves(const std::string& label, const std::map<int, Poly>& a, const std::map<int, Poly>& b,
                            const Window& w) {
  for (int e2 = w.lo2; e2 <= w.hi2; ++e2) {
    auto get = [&](const std::map<int, Poly>& m) {
      auto it = m.find(e2);
      return it == m.end() ? Poly{} : it->second;
    };
    Check c = check_equal(label + " at exponent " + exponent_string(var::zeta(), e2), get(a), get(b));
    if (!c.pass) return c;
  }
  return {label, true, {}, {}};
}

/// I-form of a model's curve with I-indices up to `top`.
inline CurveSeries curve_i_form(CurveModel model, int top, int K = 0) {
  switch (model) {
    case CurveModel::one_d: return curve_1d_i(top);
    case CurveModel::hmm_thin: return curve_hmm_thin_i(top);
    case CurveModel::hmm_fat: return curve_hmm_fat_i(top, K);
    case CurveModel::two_d: return curve_2d_i(top);
  }
  throw std::logic_error("unknown model");
}

/// I-form versus t-form over the window at truncation `pol`.
inline Check curve_form_check(CurveModel model, const TPolicy& pol, const Window& w, int K = 0) {
  CurveSeries i = curve_i_form(model, pol.max_index, K);
  return compare_curves("I-form vs t-form", expand_in_z(i, pol, w), curve_t_form(model, pol, w, K), w);
}

/// Curve at zero couplings. The fat curve through 't Hooft order K keeps the Catalan tail
/// sqrt(2) sum_{k=1}^{K} C_k tH^{k+1} / z^{2k+1}.
inline CurveSeries base_curve(CurveModel model, int K = 0) {
  using detail::zeta_pow;
  switch (model) {
    case CurveModel::one_d: return {zeta_pow(-2) - zeta_pow(2) * Rational(1, 2), CurveVar::z, CurveUnit::sqrt2};
    case CurveModel::hmm_thin:
      return {Poly::var(var::N()) * zeta_pow(-2) - zeta_pow(2) * Rational(1, 2), CurveVar::z, CurveUnit::sqrt2};
    case CurveModel::hmm_fat: {
      Poly r = Poly::var(var::tH()) * zeta_pow(-2) - zeta_pow(2) * Rational(1, 2);
      for (int k = 1; k <= K; ++k)
        r += Poly::var(var::tH(), k + 1) * zeta_pow(-4 * k - 2) * (binomial(2 * k, k) / Rational(k + 1));
      return {r, CurveVar::z, CurveUnit::sqrt2};
    }
    case CurveModel::two_d: return {zeta_pow(1), CurveVar::z, CurveUnit::one};
  }
  throw std::logic_error("unknown model");
}

/// Sets every I_n (and I_0, so zeta becomes z) to zero and v to one.
inline CurveSeries restrict_to_origin(const CurveSeries& c) {
  Poly r;
  for (auto& [m, k] : c.body) {
    bool vanishes = false;
    std::vector<Monomial::Entry> kept;
    for (auto& [x, e] : m.entries()) {
      if (x.family == Family::I || x.family == Family::t) vanishes = true;
      else if (x.family != Family::v && x.family != Family::w) kept.push_back({x, e});
    }
    if (!vanishes) r.add_term(Monomial::from_entries(kept), k);
  }
  return {r, CurveVar::z, c.unit};
}

/// Action function S = integral of y dz in I-coordinates. The log(z - I_0) summand of the
/// 1D-type models is kept apart as its coefficient.
struct Action {
  Poly log_coefficient;  // multiplies log(z - I_0)
  CurveSeries power_part;
};

inline Action action_i(CurveModel model, int top) {
  if (model == CurveModel::hmm_fat) throw std::invalid_argument("no action function for the fat curve");
  Action a;
  if (model == CurveModel::two_d) {
    Poly r;
    for (int n = 1; n <= std::max(top, 1); ++n) {
      Poly in = n <= top ? Poly::var(var::I(n)) : Poly{};
      if (n == 1) in -= Poly(Rational(1));
      r -= in * detail::zeta_pow(2 * n + 1) * (Rational(1, 2) / gamma_half(n + 1));
    }
    a.power_part = {r, CurveVar::zeta, CurveUnit::one};
    return a;
  }
  a.log_coefficient = model == CurveModel::one_d ? Poly(Rational(1)) : Poly::var(var::N());
  Poly r;
  for (int n = 1; n <= std::max(top, 1); ++n) {
    Poly in = n <= top ? Poly::var(var::I(n)) : Poly{};
    if (n == 1) in -= Poly(Rational(1));
    r += in * detail::zeta_pow(2 * n + 2) * (detail::kInvSqrt2 / factorial(n + 1));
  }
  a.power_part = {r, CurveVar::zeta, CurveUnit::sqrt2};
  return a;
}

/// d/dz of a zeta-series (equal to d/dzeta).
inline Poly z_derivative(const Poly& p) {
  Poly r;
  for (auto& [m, c] : p) {
    int e2 = m.zeta2();
    if (e2 == 0) continue;
    r.add_term(m.shifted(var::zeta(), -2), c * Rational(e2, 2));
  }
  return r;
}

/// d/dt_0 of an I-coordinate expression in zeta = z - I_0:
///   d I_n/dt_0 = v I_{n+1} (n >= 1), d zeta/dt_0 = -v, dv/dt_0 = v^3 I_2.
/// `top` bounds the I-indices kept (the t-coupling d_X raises indices by one).
inline Poly dt0_curve(const Poly& p, int top) {
  Poly v = Poly::var(var::v());
  Poly r = -(v * z_derivative(p));
  for (int n = 1; n <= top; ++n) {
    Poly d = differentiate(p, var::I(n));
    if (!d.is_zero()) r += v * Poly::var(var::I(n + 1)) * d;
  }
  return normalize_v(r);
}

/// Checks of the action function of a model, all exact:
///   dS/dz = y; dS/dt_0 against its closed form; -dS/dt_0 at I_0 = I_1 = 0 equals the base curve.
inline std::vector<Check> action_checks(CurveModel model, int top) {
  std::vector<Check> out;
  Action a = action_i(model, top);
  CurveSeries y = model == CurveModel::two_d ? curve_2d_unified(top) : curve_i_form(model, top);
  Poly dz = z_derivative(a.power_part.body) + a.log_coefficient * detail::zeta_pow(-2);
  out.push_back(check_equal("dS/dz = y", dz, y.body));

  // the log term contributes coefficient * (-v) / zeta
  Poly dt0 = dt0_curve(a.power_part.body, top) - a.log_coefficient * Poly::var(var::v()) * detail::zeta_pow(-2);
  Poly expected;
  if (model == CurveModel::two_d) {
    expected = -detail::zeta_pow(1);
  } else {
    expected = -a.log_coefficient * Poly::var(var::v()) * detail::zeta_pow(-2) + detail::zeta_pow(2) * detail::kInvSqrt2;
  }
  // the top index truncates d_X: drop terms with I_{top+1}
  Poly dt0_kept = dt0.filtered([&](const Monomial& m) { return m.max_index(Family::I) <= top; });
  out.push_back(check_equal("dS/dt0 closed form", dt0_kept, expected));

  CurveSeries restricted = restrict_to_origin({-dt0_kept, CurveVar::zeta, a.power_part.unit});
  out.push_back(check_equal("y = -dS/dt0 at I0 = I1 = 0", restricted.body, base_curve(model).body));
  return out;
}

/// Restriction of the I-form and of the t-form to zero couplings, against the base curve.
inline std::vector<Check> base_checks(CurveModel model, const TPolicy& pol, const Window& w, int K = 0) {
  std::vector<Check> out;
  CurveSeries base = base_curve(model, K);
  out.push_back(check_equal("I-form at zero couplings", restrict_to_origin(curve_i_form(model, pol.max_index, K)).body,
                            base.body));
  Poly t0;
  for (auto& [e2, p] : curve_t_form(model, pol, w, K)) t0 += restrict_to_origin({p, CurveVar::z, base.unit}).body * detail::zeta_pow(e2);
  Poly in_window = base.body.filtered([&](const Monomial& m) { return w.contains(m.zeta2()); });
  out.push_back(check_equal("t-form at zero couplings", t0, in_window));
  return out;
}

/// Normalization of the Airy-curve deformation with double factorials, at zero couplings:
///   z^{1/2} - sum t_n/(2n-1)!! z^{n-1/2} - sum (2n+1)!! dF_0/dt_n z^{-n-3/2}.
inline std::map<int, Poly> airy_w_t_form(const TPolicy& pol, const Window& w) {
  const int probe = std::max(probe_reach(CurveModel::two_d, w), pol.max_index);
  TPolicy wide{pol.max_index, pol.max_factors + 1, probe, probe > pol.max_index ? 1 : 0};
  TruncatedSeries f0 = f0_t_series(CurveModel::two_d, wide);
  std::map<int, Poly> out;
  out[1] += Poly(Rational(1));
  for (int n = 0; n <= pol.max_index; ++n)
    out[2 * n - 1] -= Poly::var(var::t(n)) * (Rational(1) / odd_double_factorial(n - 1));
  for (int n = 0; -2 * n - 3 >= w.lo2; ++n)
    out[-2 * n - 3] -= truncate(partial_raw(f0.body(), var::t(n)), pol.series()) * odd_double_factorial(n);
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace renorm
