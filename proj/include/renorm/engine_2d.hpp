#pragma once

#include "renorm/coords.hpp"
#include "renorm/free_energy.hpp"
#include "renorm/memo.hpp"
#include "renorm/report.hpp"
#include "renorm/tilde.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace renorm {

namespace detail {

/// Keeps terms of an I-side polynomial that can survive a t-side truncation of `pol`:
/// at most max_factors I-factors, and I-indices up to the top index.
inline Poly keep_for(const Poly& p, const TPolicy& pol) {
  return p.filtered([&](const Monomial& m) {
    if (m.factor_count() > pol.max_factors) return false;
    return m.max_index(Family::I) <= pol.top_index();
  });
}

inline Poly ix(int n) { return Poly::var(var::I(n)); }
inline Poly ghost(int n) { return Poly::var(var::ghost(n)); }

}  // namespace detail

/// Genus-zero 2D free energy as a polynomial in I_0, I_1, ...:
///   I_0^3/6 - sum_n (-1)^n I_0^{n+2}/(n+2)! I_n
///     + 1/2 sum_{n,k} (-1)^{n+k} I_0^{n+k+1}/(n! k! (n+k+1)) I_n I_k,
/// keeping what survives the truncation `pol`.
inline Poly f0_2d_poly(const TPolicy& pol) {
  const int top = pol.top_index();
  const int d = pol.max_factors;
  Poly f = Poly::var(var::I(0), 3) * Rational(1, 6);
  for (int n = 0; n <= top && n + 3 <= d; ++n)
    f -= detail::ix(n) * Poly::var(var::I(0), n + 2) * (pow(Rational(-1), n) / factorial(n + 2));
  for (int n = 0; n <= top; ++n)
    for (int k = 0; k <= top && n + k + 3 <= d; ++k) {
      Rational c = pow(Rational(-1), n + k) / (factorial(n) * factorial(k) * Rational(n + k + 1)) * Rational(1, 2);
      f += detail::ix(n) * detail::ix(k) * Poly::var(var::I(0), n + k + 1) * c;
    }
  return detail::keep_for(f, pol);
}

inline TruncatedSeries f0_2d(const TPolicy& pol) { return TruncatedSeries(f0_2d_poly(pol), pol.series(Family::I)); }

/// f0_2d with indices up to `order` and order+3 factors.
inline TruncatedSeries f0_2d(int order) {
  if (order < 3) throw std::invalid_argument("f0_2d: order must be >= 3");
  return f0_2d(TPolicy{order, order + 3});
}

/// dF_0/dI_0 - (1/2)(sum_n (-1)^n I_0^n I_n / n!)^2 in I-variables, truncated.
inline Poly string_residual_2d(const TPolicy& pol) {
  SeriesPolicy sp = pol.series(Family::I);
  Poly u;
  for (int n = 0; n <= pol.top_index(); ++n)
    u += detail::ix(n) * Poly::var(var::I(0), n) * (pow(Rational(-1), n) / factorial(n));
  Poly r = partial_raw(f0_2d_poly(pol), var::I(0)) - Poly::multiply(u, u, [&](const Monomial& m) {
             return m.factor_count() <= pol.max_factors;
           }) * Rational(1, 2);
  // the derivative lowers the factor count by one
  SeriesPolicy lower = sp;
  lower.max_factors = pol.max_factors - 1;
  return truncate(r, lower);
}

/// The four genus-zero expressions, each rewritten as a t-series.
struct F0Forms2D {
  TruncatedSeries i_form;      // polynomial in I_0, I_n
  TruncatedSeries ghost_form;  // I_0^3/6 + I_{-2} - I_0 I_{-1} + 1/2 sum (-1)^n I_n I_{-n-1}
  TruncatedSeries t_form;      // polynomial in I_0 and t_n
  TruncatedSeries tilde_form;  // extension with ghost couplings, at zero ghost couplings
};

/// Replaces ghost variables by their expansion in I_0, I_k.
inline Poly expand_ghosts(const Poly& p, const TPolicy& pol) {
  std::map<VarId, TruncatedSeries> subs;
  SeriesPolicy wide = pol.series(Family::I);
  wide.allowed.push_back({Family::t, 0, pol.top_index()});
  wide.max_factors = pol.max_factors;
  wide.probes.clear();
  wide.max_probe_degree = 0;
  for (auto& [m, c] : p)
    for (auto& [x, e] : m.entries())
      if (x.family == Family::GhostI && !subs.count(x))
        subs.emplace(x, TruncatedSeries(truncate(ghost_in_i(x.index, pol.top_index()), wide), wide));
  return compose(p, subs, wide).body();
}

inline F0Forms2D f0_2d_forms(const TPolicy& pol) {
  const int top = pol.top_index();
  const int d = pol.max_factors;
  using detail::ghost;
  using detail::ix;
  Poly i03 = Poly::var(var::I(0), 3) * Rational(1, 6);

  Poly gh = i03 + ghost(2) - ix(0) * ghost(1);
  for (int n = 0; n <= top && n + 1 < d; ++n) gh += ix(n) * ghost(n + 1) * (pow(Rational(-1), n) / Rational(2));

  Poly tf = i03;
  for (int k = 0; k <= top && k + 3 <= d; ++k)
    tf -= Poly::var(var::t(k)) * Poly::var(var::I(0), k + 2) * (Rational(1) / (factorial(k) * Rational(k + 2)));
  for (int n = 0; n <= top; ++n)
    for (int k = 0; k <= top && n + k + 3 <= d; ++k)
      tf += Poly::var(var::t(n)) * Poly::var(var::t(k)) * Poly::var(var::I(0), n + k + 1) *
            (Rational(1, 2) / (factorial(n) * factorial(k) * Rational(n + k + 1)));

  Poly tl = i03;
  for (int n = 0; n <= top; ++n)
    for (int k = 0; k <= top && n + k + 3 <= d; ++k)
      tl -= ix(n) * ix(k) * Poly::var(var::I(0), n + k + 1) *
            (pow(Rational(-1), n + k) / (factorial(n) * factorial(k) * Rational(n + k + 1)) * Rational(1, 2));
  for (int n = 1; n <= top && n + 1 < d; ++n) {
    Poly in = ix(n);
    if (n == 1) in -= Poly(Rational(1));
    tl += in * ghost(n + 1) * pow(Rational(-1), n);
  }

  return {to_t_series(f0_2d_poly(pol), pol), to_t_series(expand_ghosts(gh, pol), pol), to_t_series(tf, pol),
          to_t_series(expand_ghosts(tl, pol), pol)};
}

/// Compares the four genus-zero forms pairwise against the I-form.
inline std::vector<Check> f0_2d_agreement(const TPolicy& pol) {
  F0Forms2D f = f0_2d_forms(pol);
  return {check_equal("ghost form vs I-form", f.ghost_form.body(), f.i_form.body()),
          check_equal("t-form vs I-form", f.t_form.body(), f.i_form.body()),
          check_equal("extended ghost form vs I-form", f.tilde_form.body(), f.i_form.body())};
}

/// Genus-one 2D free energy (1/24) log(1/(1-I_1)) as dF/dJ_1 = w/8.
inline Partials f1_2d() { return Partials::from_table({{1, Poly::var(var::w()) * Rational(1, 8)}}, kJFrame); }

namespace detail {

inline Memo<int, Partials>& memo_2d() {
  static Memo<int, Partials> m;
  return m;
}

}  // namespace detail

/// 2D free energy of genus g >= 1 as J-frame partials.
///
/// dF_g/dJ_{m+1} = w [ sum_{n>=2} (2n+1) J_n dF_g/dJ_{m+n}
///   + 1/2 sum_{k+l=m-1} ( d_k d_l F_{g-1} + sum_{g1=1}^{g-1} d_k F_{g1} d_l F_{g-g1} ) ],
/// with d_k the derivative by t_k/(2k+1)!! at I_0 = 0.
inline const Partials& partials_2d(int g) {
  if (g < 1) throw std::invalid_argument("partials_2d: genus must be >= 1");
  return detail::memo_2d().get(g, [g] {
    if (g == 1) return f1_2d();
    auto source = [&](int m) {
      Poly s;
      const Partials& prev = partials_2d(g - 1);
      for (int k = 0; k <= m - 1; ++k) {
        int l = m - 1 - k;
        s += dt2(prev, k, l);
        for (int g1 = 1; g1 <= g - 1; ++g1) s += dt(partials_2d(g1), k) * dt(partials_2d(g - g1), l);
      }
      return s * Rational(1, 2);
    };
    Solved s = solve_j_frame(3 * g - 3, 3 * g - 2, source, "2D genus " + std::to_string(g));
    return Partials::from_body(std::move(s.body), kJFrame);
  });
}

/// F_g^{2D} for g >= 2 as a polynomial in w and J_2..J_{3g-2}.
inline const Poly& fg_2d(int g) {
  if (g < 2) throw std::invalid_argument("fg_2d: genus must be >= 2");
  return *partials_2d(g).body();
}

/// Intersection numbers <prod tau_j^{l_j}>_g from the tilde form.
inline CorrelatorTable correlators_2d(int g) {
  CorrelatorTable t = correlators_from_tilde(j_to_i_tilde(fg_2d(g)));
  for (auto& [pat, val] : t) {
    int deg = 0;
    for (auto& [j, l] : pat) deg += (j - 1) * l;
    if (deg != 3 * g - 3) throw StructuralError("selection rule violated by " + pattern_text(pat));
  }
  return t;
}

/// E = sum_{k>=2} (2k+1)/3 I_k d/dI_k.
inline Poly euler_e(const Poly& p) {
  Poly r;
  for (auto& [m, c] : p) {
    Rational s(0);
    for (auto& [x, e] : m.entries())
      if (x.family == Family::I && x.index >= 2) s += Rational(e * (2 * x.index + 1), 3);
    r.add_term(m, c * s);
  }
  return r;
}

/// Coefficients a_{g,0..n_max} of F_g^{2D} as a power series in I_1, from
///   a_{g,1} = E(a_{g,0}) + delta_{g,1}/24,  m a_{g,m} = (m-1) a_{g,m-1} + E(a_{g,m-1}).
inline std::vector<Poly> ag_expansion(int g, int n_max) {
  if (g < 1) throw std::invalid_argument("ag_expansion: genus must be >= 1");
  std::vector<Poly> a;
  a.push_back(g == 1 ? Poly{} : j_to_i_tilde(fg_2d(g)));
  for (int m = 1; m <= n_max; ++m) {
    Poly next = a.back() * Rational(m - 1) + euler_e(a.back());
    if (m == 1 && g == 1) next += Poly(Rational(1, 24));
    a.push_back(next / Rational(m));
  }
  return a;
}

}  // namespace renorm
