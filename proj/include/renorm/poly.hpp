#pragma once

#include "renorm/monomial.hpp"
#include "renorm/rational.hpp"

#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace renorm {

/// Sparse polynomial with exact coefficients, kept in canonical monomial order.
class Poly {
 public:
  using Map = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c) { add_term(Monomial{}, c); }  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  Poly(T c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly var(VarId x, int stored = 1) { return term(Rational(1), Monomial::of(x, stored)); }
  static Poly term(const Rational& c, const Monomial& m) {
    Poly p;
    p.add_term(m, c);
    return p;
  }

  const Map& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  auto begin() const { return t_.begin(); }
  auto end() const { return t_.end(); }

  Rational coefficient(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
  }

  /// Constant term.
  Rational constant() const { return coefficient(Monomial{}); }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      t_.clear();
      return *this;
    }
    for (auto& [m, c] : t_) c *= s;
    return *this;
  }
  Poly& operator/=(const Rational& s) { return *this *= Rational(1) / s; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, const Rational& s) { return a /= s; }

  /// Product restricted to pairs accepted by `keep`; used by truncated arithmetic.
  static Poly multiply(const Poly& a, const Poly& b, const std::function<bool(const Monomial&)>& keep = {}) {
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (auto& [ma, ca] : a.t_) {
      for (auto& [mb, cb] : b.t_) {
        Monomial m = ma * mb;
        if (keep && !keep(m)) continue;
        auto [it, fresh] = acc.try_emplace(std::move(m), ca);
        if (fresh)
          it->second *= cb;
        else
          it->second += ca * cb;
      }
    }
    Poly r;
    for (auto& [m, c] : acc)
      if (!c.is_zero()) r.t_.emplace(m, c);
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }
  Poly& operator*=(const Poly& o) { return *this = multiply(*this, o); }

  Poly pow(unsigned e) const {
    Poly r(1);
    for (unsigned i = 0; i < e; ++i) r *= *this;
    return r;
  }

  /// Keeps only the terms accepted by `keep`.
  Poly filtered(const std::function<bool(const Monomial&)>& keep) const {
    Poly r;
    for (auto& [m, c] : t_)
      if (keep(m)) r.t_.emplace(m, c);
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

 private:
  Map t_;
};

/// Partial derivative treating every variable, including v and w, as independent.
inline Poly partial_raw(const Poly& p, VarId x) {
  if (x.family == Family::zeta) throw std::invalid_argument("differentiation by zeta is handled by curve series");
  Poly r;
  for (auto& [m, c] : p) {
    int e = m.exponent(x);
    if (e == 0) continue;
    r.add_term(m.shifted(x, -1), c * Rational(e));
  }
  return r;
}

/// Formal derivative with the built-in rules dv/dI1 = v^2 and dw/dJ1 = 3w^2.
inline Poly differentiate(const Poly& p, VarId x) {
  Poly r = partial_raw(p, x);
  if (x == var::I(1)) {
    for (auto& [m, c] : p)
      if (int e = m.exponent(var::v()); e != 0) r.add_term(m.shifted(var::v(), 1), c * Rational(e));
  } else if (x == var::J(1)) {
    for (auto& [m, c] : p)
      if (int e = m.exponent(var::w()); e != 0) r.add_term(m.shifted(var::w(), 1), c * Rational(3 * e));
  }
  return r;
}

inline int weighted_degree(const Monomial& m, const Grading& g = {}) { return m.weighted_degree(g); }

/// p with x set to the numeric value `value`.
inline Poly evaluate(const Poly& p, VarId x, const Rational& value) {
  Poly r;
  for (auto& [m, c] : p) {
    int e = m.exponent(x);
    if (e == 0) {
      r.add_term(m, c);
    } else {
      if (x.family == Family::zeta) throw std::invalid_argument("cannot evaluate zeta");
      r.add_term(m.without(x), c * pow(value, static_cast<unsigned>(e)));
    }
  }
  return r;
}

/// Coefficient of x^stored in p, as a polynomial in the remaining variables.
inline Poly coefficient_of(const Poly& p, VarId x, int stored) {
  Poly r;
  for (auto& [m, c] : p)
    if (m.exponent(x) == stored) r.add_term(m.without(x), c);
  return r;
}

/// Largest index of family f present in p, or -1.
inline int max_index(const Poly& p, Family f) {
  int r = -1;
  for (auto& [m, c] : p) r = std::max(r, m.max_index(f));
  return r;
}

}  // namespace renorm
