#pragma once

#include "renorm/report.hpp"
#include "renorm/series.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>

namespace renorm {

/// Truncation of a coupling-side series: indices <= max_index, at most max_factors
/// factors. Optional probe indices (max_index, probe_max_index] may appear with total
/// degree <= max_probe_degree; they carry first and second derivatives in directions
/// that are otherwise set to zero.
struct TPolicy {
  int max_index = 0;
  int max_factors = 1;
  int probe_max_index = -1;
  int max_probe_degree = 0;

  int top_index() const { return std::max(max_index, probe_max_index); }

  /// Same truncation over another family, e.g. I-variables.
  SeriesPolicy series(Family f = Family::t) const {
    SeriesPolicy p;
    p.allowed = {{f, 0, top_index()}, {Family::N, 0, 0}, {Family::tHooft, 0, 0}};
    p.max_factors = max_factors;
    if (probe_max_index > max_index) {
      p.probes = {{f, max_index + 1, probe_max_index}};
      p.max_probe_degree = max_probe_degree;
    }
    return p;
  }

  /// Policy with all probe directions removed.
  TPolicy without_probes() const { return {max_index, max_factors, -1, 0}; }

  friend bool operator==(const TPolicy&, const TPolicy&) = default;
  auto key() const { return std::make_tuple(max_index, max_factors, probe_max_index, max_probe_degree); }
};

namespace detail {

inline TruncatedSeries i0_iterate(const TPolicy& pol) {
  SeriesPolicy sp = pol.series();
  TruncatedSeries x(Poly{}, sp);
  for (int it = 0; it < pol.max_factors; ++it) {
    TruncatedSeries next(Poly{}, sp);
    TruncatedSeries xn(Poly(Rational(1)), sp);
    for (int n = 0; n <= pol.top_index() && n < pol.max_factors; ++n) {
      next += xn.times(Poly::var(var::t(n))) * (Rational(1) / factorial(n));
      xn *= x;
    }
    x = next;
  }
  return x;
}

}  // namespace detail

/// I_0 as a series in t: the fixed point of x = sum_n t_n x^n / n!.
inline TruncatedSeries i0_series(const TPolicy& pol) {
  if (pol.max_factors < 1) throw std::invalid_argument("i0_series needs at least one factor");
  static std::mutex mu;
  static std::map<decltype(pol.key()), TruncatedSeries> memo;
  std::lock_guard lock(mu);
  auto it = memo.find(pol.key());
  if (it == memo.end()) it = memo.emplace(pol.key(), detail::i0_iterate(pol)).first;
  return it->second;
}

/// I_n = sum_k t_{n+k} I_0^k / k!.
inline TruncatedSeries i_from_t(int n, const TPolicy& pol) {
  if (n == 0) return i0_series(pol);
  if (n < 0) throw std::invalid_argument("i_from_t: negative index");
  SeriesPolicy sp = pol.series();
  TruncatedSeries i0 = i0_series(pol);
  TruncatedSeries r(Poly{}, sp);
  TruncatedSeries p(Poly(Rational(1)), sp);
  for (int k = 0; n + k <= pol.top_index() && k < pol.max_factors; ++k) {
    r += p.times(Poly::var(var::t(n + k))) * (Rational(1) / factorial(k));
    p *= i0;
  }
  return r;
}

/// t_n = sum_k I_{n+k} (-I_0)^k / k!, as a series in I-variables. `sign` = -1 is the
/// true inverse; other values exist for mutation tests.
inline TruncatedSeries t_from_i(int n, const TPolicy& pol, int sign = -1) {
  if (n < 0) throw std::invalid_argument("t_from_i: negative index");
  SeriesPolicy sp = pol.series(Family::I);
  TruncatedSeries r(Poly{}, sp);
  for (int k = 0; n + k <= pol.top_index() && k < pol.max_factors; ++k) {
    Poly term = Poly::var(var::I(n + k)) * Poly::var(var::I(0), k) * (pow(Rational(sign), k) / factorial(k));
    r += TruncatedSeries(term, sp);
  }
  return r;
}

/// I_{-n} = sum_k t_k I_0^{k+n} / (k+n)! with ghost couplings set to zero.
inline TruncatedSeries ghost_from_t(int n, const TPolicy& pol) {
  if (n < 1) throw std::invalid_argument("ghost_from_t: index must be >= 1");
  SeriesPolicy sp = pol.series();
  TruncatedSeries i0 = i0_series(pol);
  TruncatedSeries r(Poly{}, sp);
  TruncatedSeries p = i0.pow(static_cast<unsigned>(n));
  for (int k = 0; k <= pol.top_index() && k + n < pol.max_factors; ++k) {
    r += p.times(Poly::var(var::t(k))) * (Rational(1) / factorial(k + n));
    p *= i0;
  }
  return r;
}

/// I_{-n} = sum_{k <= max_k} I_k (-1)^k I_0^{k+n} / (k! (n-1)! (k+n)).
inline Poly ghost_in_i(int n, int max_k) {
  if (n < 1) throw std::invalid_argument("ghost_in_i: index must be >= 1");
  Poly r;
  for (int k = 0; k <= max_k; ++k) {
    Rational c = pow(Rational(-1), k) / (factorial(k) * factorial(n - 1) * Rational(k + n));
    r += Poly::var(var::I(k)) * Poly::var(var::I(0), k + n) * c;
  }
  return r;
}

/// v = 1/(1 - I_1) as a geometric series in t.
inline TruncatedSeries v_series(const TPolicy& pol) {
  SeriesPolicy sp = pol.series();
  TruncatedSeries i1 = i_from_t(1, pol);
  TruncatedSeries r(Poly(Rational(1)), sp);
  TruncatedSeries p(Poly(Rational(1)), sp);
  for (int j = 1; j <= pol.max_factors; ++j) {
    p *= i1;
    r += p;
  }
  return r;
}

/// log(1/(1 - I_1)) as a series in t.
inline TruncatedSeries log_v_series(const TPolicy& pol) {
  SeriesPolicy sp = pol.series();
  TruncatedSeries i1 = i_from_t(1, pol);
  TruncatedSeries r(Poly{}, sp);
  TruncatedSeries p(Poly(Rational(1)), sp);
  for (int j = 1; j <= pol.max_factors; ++j) {
    p *= i1;
    r += p * (Rational(1) / Rational(j));
  }
  return r;
}

/// Rewrites a polynomial in I, J, ghost I, v and w as a t-series.
/// J_k = I_k/(2k+1)!! and v = w = 1/(1 - I_1); N and tH are kept.
inline TruncatedSeries to_t_series(const Poly& p, const TPolicy& pol) {
  std::set<VarId> vars;
  for (auto& [m, c] : p)
    for (auto& [x, e] : m.entries()) vars.insert(x);
  std::map<VarId, TruncatedSeries> subs;
  for (VarId x : vars) {
    switch (x.family) {
      case Family::I: subs.emplace(x, i_from_t(x.index, pol)); break;
      case Family::J: subs.emplace(x, i_from_t(x.index, pol) * (Rational(1) / odd_double_factorial(x.index))); break;
      case Family::GhostI: subs.emplace(x, ghost_from_t(x.index, pol)); break;
      case Family::v:
      case Family::w: subs.emplace(x, v_series(pol)); break;
      case Family::N:
      case Family::tHooft:
      case Family::t: break;
      case Family::zeta: throw std::invalid_argument("to_t_series: zeta is not a coupling");
    }
  }
  return compose(p, subs, pol.series());
}

/// Composes t_from_i with i_from_t and compares with t_n for every n <= M.
inline Check roundtrip_check(const TPolicy& pol, int sign = -1) {
  SeriesPolicy st = pol.series();
  std::map<VarId, TruncatedSeries> subs;
  for (int j = 0; j <= pol.top_index(); ++j) subs.emplace(var::I(j), i_from_t(j, pol));
  for (int n = 0; n <= pol.max_index; ++n) {
    TruncatedSeries back = compose(t_from_i(n, pol, sign).body(), subs, st);
    Check c = check_equal("t" + std::to_string(n) + " -> I -> t", back.body(), truncate(Poly::var(var::t(n)), st));
    if (!c.pass) return c;
  }
  return {"roundtrip t -> I -> t", true, {}, {}};
}

}  // namespace renorm
