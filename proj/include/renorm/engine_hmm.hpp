#pragma once

#include "renorm/free_energy.hpp"
#include "renorm/memo.hpp"
#include "renorm/tilde.hpp"

#include <stdexcept>
#include <string>

namespace renorm {

/// Genus-one thin free energy (N^2/2) log(1/(1-I_1)), kept as dF/dI_1 = N^2 v/2.
inline Partials f1_hmm() {
  return Partials::from_table({{1, Poly::var(var::N(), 2) * Poly::var(var::v()) * Rational(1, 2)}});
}

/// First member of the fat genus-zero tower, (1/2) log(1/(1-I_1)), as dF/dI_1 = v/2.
inline Partials f01_fat() { return Partials::from_table({{1, Poly::var(var::v()) * Rational(1, 2)}}); }

namespace detail {

inline Memo<int, Partials>& memo_hmm() {
  static Memo<int, Partials> m;
  return m;
}

inline Memo<int, Partials>& memo_fat() {
  static Memo<int, Partials> m;
  return m;
}

}  // namespace detail

const Partials& partials_hmm(int g);
const Partials& partials_fat(int k);

/// Thin free energy of genus g >= 1 as partials.
///
/// For g >= 2 the genus-(g-1) part of the L_m constraint, restricted to I_0 = 0,
/// determines dF_g/dI_{m+1}; its source is
///   2N m! d_{m-1}F_{g-1} + sum_{g1+g2=g-1} sum_k k!(m-k)! d_{k-1}F_{g1} d_{m-k-1}F_{g2}
///   + sum_k k!(m-k)! d_{k-1}d_{m-k-1}F_{g-2} + delta_{m,2} delta_{g,2} N v,
/// with d_a the t_a-derivative at I_0 = 0. Genus zero enters only through the last term.
inline const Partials& partials_hmm(int g) {
  if (g < 1) throw std::invalid_argument("partials_hmm: genus must be >= 1");
  return detail::memo_hmm().get(g, [g] {
    if (g == 1) return f1_hmm();
    Poly n = Poly::var(var::N());
    auto source = [&](int m) {
      Poly s = n * dt(partials_hmm(g - 1), m - 1) * (Rational(2) * factorial(m));
      for (int g1 = 1; g1 <= g - 2; ++g1) {
        const Partials& a = partials_hmm(g1);
        const Partials& b = partials_hmm(g - 1 - g1);
        for (int k = 1; k <= m - 1; ++k) s += dt(a, k - 1) * dt(b, m - k - 1) * (factorial(k) * factorial(m - k));
      }
      if (g >= 3) {
        const Partials& c = partials_hmm(g - 2);
        for (int k = 1; k <= m - 1; ++k) s += dt2(c, k - 1, m - k - 1) * (factorial(k) * factorial(m - k));
      }
      if (m == 2 && g == 2) s += n * Poly::var(var::v());
      return s;
    };
    Solved s = solve_i_frame(2 * g - 2, 2 * g - 1, source, "thin genus " + std::to_string(g));
    return Partials::from_body(std::move(s.body));
  });
}

/// Thin free energy F_g^N for g >= 2 as a polynomial in N, v and I_2..I_{2g-1}.
inline const Poly& fg_hmm(int g) {
  if (g < 2) throw std::invalid_argument("fg_hmm: genus must be >= 2");
  return *partials_hmm(g).body();
}

/// Fat genus-zero tower member F^t_{0,k} as partials: the top power of N in the thin
/// recursion, so only the linear and product terms survive.
inline const Partials& partials_fat(int k) {
  if (k < 1) throw std::invalid_argument("partials_fat: order must be >= 1");
  return detail::memo_fat().get(k, [k] {
    if (k == 1) return f01_fat();
    auto source = [&](int m) {
      Poly s = dt(partials_fat(k - 1), m - 1) * (Rational(2) * factorial(m));
      for (int k1 = 1; k1 <= k - 2; ++k1) {
        const Partials& a = partials_fat(k1);
        const Partials& b = partials_fat(k - 1 - k1);
        for (int j = 1; j <= m - 1; ++j) s += dt(a, j - 1) * dt(b, m - j - 1) * (factorial(j) * factorial(m - j));
      }
      return s;
    };
    Solved s = solve_i_frame(2 * k - 2, 2 * k - 1, source, "fat order " + std::to_string(k));
    return Partials::from_body(std::move(s.body));
  });
}

/// F^t_{0,k} for k >= 2 as a polynomial in v and I_2..I_{2k-1}.
inline const Poly& f0k_fat(int k) {
  if (k < 2) throw std::invalid_argument("f0k_fat: order must be >= 2 (order 1 is a logarithm)");
  return *partials_fat(k).body();
}

/// Thin correlators as polynomials in N.
inline CorrelatorTable correlators_hmm(int g) { return correlators_from_tilde(to_tilde(fg_hmm(g), Tilde::plain)); }

}  // namespace renorm
