#pragma once

#include "renorm/poly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace renorm {

/// Closed index range of one family; nullary families use [0, 0].
struct VarRange {
  Family family{Family::t};
  int lo = 0;
  int hi = 0;

  bool contains(VarId x) const { return x.family == family && x.index >= lo && x.index <= hi; }
  friend bool operator==(const VarRange&, const VarRange&) = default;
};

/// Truncation contract of a series.
///
/// A term survives iff every variable is whitelisted, it has at most `max_factors`
/// counted factors, at most `max_probe_degree` factors from the probe ranges, and
/// (when a window is set) its doubled zeta exponent lies in the window.
struct SeriesPolicy {
  std::vector<VarRange> allowed;
  int max_factors = 0;
  std::vector<VarRange> probes;
  int max_probe_degree = 0;
  std::optional<std::pair<int, int>> zeta_window;

  bool allows(VarId x) const {
    return std::any_of(allowed.begin(), allowed.end(), [&](const VarRange& r) { return r.contains(x); });
  }

  bool admits(const Monomial& m) const {
    int factors = 0;
    int probe = 0;
    for (auto& [x, e] : m.entries()) {
      if (!allows(x)) return false;
      if (is_counted(x.family)) factors += e;
      if (std::any_of(probes.begin(), probes.end(), [&](const VarRange& r) { return r.contains(x); })) probe += e;
    }
    if (factors > max_factors || probe > max_probe_degree) return false;
    if (zeta_window) {
      int z = m.zeta2();
      if (z < zeta_window->first || z > zeta_window->second) return false;
    }
    return true;
  }

  friend bool operator==(const SeriesPolicy&, const SeriesPolicy&) = default;
};

inline Poly truncate(const Poly& p, const SeriesPolicy& pol) {
  return p.filtered([&](const Monomial& m) { return pol.admits(m); });
}

/// A polynomial together with the truncation policy it is exact under.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(const Poly& p, SeriesPolicy pol) : pol_(std::move(pol)), body_(truncate(p, pol_)) {}

  const Poly& body() const { return body_; }
  const SeriesPolicy& policy() const { return pol_; }
  bool is_zero() const { return body_.is_zero(); }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    same_policy(o);
    body_ += o.body_;
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    same_policy(o);
    body_ -= o.body_;
    return *this;
  }
  TruncatedSeries& operator*=(const Rational& s) {
    body_ *= s;
    return *this;
  }
  TruncatedSeries operator-() const { return TruncatedSeries(-body_, pol_, Exact{}); }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
  friend TruncatedSeries operator*(const Rational& s, TruncatedSeries a) { return a *= s; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.same_policy(b);
    return TruncatedSeries(mul_truncated(a.body_, b.body_, a.pol_), a.pol_, Exact{});
  }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  /// Product with an arbitrary polynomial, re-truncated.
  TruncatedSeries times(const Poly& p) const { return TruncatedSeries(mul_truncated(body_, p, pol_), pol_, Exact{}); }

  TruncatedSeries pow(unsigned e) const {
    TruncatedSeries r(Poly(Rational(1)), pol_);
    TruncatedSeries b = *this;
    while (e) {
      if (e & 1U) r *= b;
      e >>= 1U;
      if (e) b *= b;
    }
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.pol_ == b.pol_ && a.body_ == b.body_;
  }

  /// Product of two polynomials keeping only admissible terms; prunes on factor count.
  static Poly mul_truncated(const Poly& a, const Poly& b, const SeriesPolicy& pol) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::pair<int, const std::pair<const Monomial, Rational>*>> bs;
    bs.reserve(b.size());
    for (auto& t : b) bs.push_back({t.first.factor_count(), &t});
    std::sort(bs.begin(), bs.end(), [](auto& x, auto& y) { return x.first < y.first; });
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    for (auto& [ma, ca] : a) {
      int fa = ma.factor_count();
      if (fa > pol.max_factors) continue;
      for (auto& [fb, tb] : bs) {
        if (fa + fb > pol.max_factors) break;
        Monomial m = ma * tb->first;
        if (!pol.admits(m)) continue;
        auto [it, fresh] = acc.try_emplace(std::move(m), ca);
        if (fresh)
          it->second *= tb->second;
        else
          it->second += ca * tb->second;
      }
    }
    Poly r;
    for (auto& [m, c] : acc) r.add_term(m, c);
    return r;
  }

 private:
  struct Exact {};
  TruncatedSeries(Poly p, SeriesPolicy pol, Exact) : pol_(std::move(pol)), body_(std::move(p)) {}

  void same_policy(const TruncatedSeries& o) const {
    if (!(pol_ == o.pol_)) throw std::invalid_argument("series with different truncation policies");
  }

  SeriesPolicy pol_;
  Poly body_;
};

/// Replaces each variable in `subs` by its series, expands and truncates under `pol`.
/// Variables not in `subs` are kept (and dropped if `pol` does not allow them).
inline TruncatedSeries compose(const Poly& p, const std::map<VarId, TruncatedSeries>& subs, const SeriesPolicy& pol) {
  for (auto& [x, s] : subs)
    if (!(s.policy() == pol)) throw std::invalid_argument("substituted series must share the target policy");
  std::map<std::pair<VarId, int>, Poly> powers;
  auto power = [&](VarId x, int e) -> const Poly& {
    const Poly& base = subs.at(x).body();
    for (int k = 1; k <= e; ++k) {
      if (powers.contains({x, k})) continue;
      Poly r = k == 1 ? base : TruncatedSeries::mul_truncated(powers.at({x, k - 1}), base, pol);
      powers.emplace(std::make_pair(x, k), std::move(r));
    }
    return powers.at({x, e});
  };
  Poly out;
  for (auto& [m, c] : p) {
    Poly acc(c);
    std::vector<Monomial::Entry> kept;
    for (auto& [x, e] : m.entries()) {
      if (subs.contains(x)) {
        if (x.family == Family::zeta && e % 2 != 0)
          throw std::invalid_argument("cannot substitute into a half-integer exponent");
        continue;
      }
      kept.push_back({x, e});
    }
    Monomial rest = Monomial::from_entries(kept);
    if (!rest.is_one()) {
      acc = truncate(Poly::term(c, rest), pol);
      if (acc.is_zero()) continue;
    }
    for (auto& [x, e] : m.entries()) {
      if (!subs.contains(x)) continue;
      int k = x.family == Family::zeta ? e / 2 : e;
      if (k < 0) throw std::invalid_argument("cannot substitute into a negative exponent");
      acc = TruncatedSeries::mul_truncated(acc, power(x, k), pol);
      if (acc.is_zero()) break;
    }
    out += acc;
  }
  return TruncatedSeries(out, pol);
}

/// p with x replaced by s, truncated under s's policy.
inline TruncatedSeries substitute(const Poly& p, VarId x, const TruncatedSeries& s) {
  return compose(p, {{x, s}}, s.policy());
}

}  // namespace renorm
