#pragma once

#include "renorm/free_energy.hpp"
#include "renorm/memo.hpp"
#include "renorm/series.hpp"
#include "renorm/tilde.hpp"

#include <stdexcept>
#include <string>

namespace renorm {

/// Genus-zero free energy of 1D gravity,
///   F_0 = sum_{k=0}^{order} (-1)^k/(k+1)! (I_k + delta_{k,1}) I_0^{k+1}.
inline TruncatedSeries f0_1d(int order) {
  if (order < 1) throw std::invalid_argument("f0_1d: order must be >= 1");
  SeriesPolicy pol{{{Family::I, 0, order}}, order + 2};
  Poly f;
  for (int k = 0; k <= order; ++k) {
    Poly ik = Poly::var(var::I(k));
    if (k == 1) ik += Poly(Rational(1));
    f += ik * Poly::var(var::I(0), k + 1) * (pow(Rational(-1), k) / factorial(k + 1));
  }
  return TruncatedSeries(f, pol);
}

/// Genus-one free energy (1/2) log(1/(1-I_1)), kept as the table dF/dI_1 = v/2.
inline Partials f1_1d() { return Partials::from_table({{1, Poly::var(var::v()) * Rational(1, 2)}}); }

namespace detail {

inline Memo<int, Partials>& memo_1d() {
  static Memo<int, Partials> m;
  return m;
}

}  // namespace detail

/// Free energy of genus g >= 1 as partials (the body is present for g >= 2).
inline const Partials& partials_1d(int g) {
  if (g < 1) throw std::invalid_argument("partials_1d: genus must be >= 1");
  return detail::memo_1d().get(g, [g] {
    if (g == 1) return f1_1d();
    const Partials& prev = partials_1d(g - 1);
    auto source = [&](int m) { return dt(prev, m - 1) * factorial(m + 1); };
    Solved s = solve_i_frame(2 * g - 2, 2 * g - 1, source, "1D genus " + std::to_string(g));
    return Partials::from_body(std::move(s.body));
  });
}

/// F_g for g >= 2 as a polynomial in v and I_2..I_{2g-1}.
inline const Poly& fg_1d(int g) {
  if (g < 2) throw std::invalid_argument("fg_1d: genus must be >= 2");
  return *partials_1d(g).body();
}

/// Correlators <prod tau_j^{m_j}>_g: coefficient in F_g times prod m_j!.
inline CorrelatorTable correlators_1d(int g) { return correlators_from_tilde(to_tilde(fg_1d(g), Tilde::plain)); }

}  // namespace renorm
