#pragma once

#include "renorm/poly.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace renorm {

/// Raised when an engine's built-in cross-checks disagree.
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coordinate ring of a free energy: I_k with v = 1/(1-I_1), or J_k with w = 1/(1-3J_1).
/// `dx_coefficient(l)` is c_l in the restricted vector field sum_l c_l X_{l+1} d/dX_l,
/// which equals d_X on I-functions and is (2l+3) J_{l+1} d/dJ_l on J-functions.
struct Frame {
  Family family = Family::I;

  VarId x(int k) const { return {family, k}; }
  VarId unit() const { return family == Family::I ? var::v() : var::w(); }
  Rational dx_coefficient(int l) const { return family == Family::I ? Rational(1) : Rational(2 * l + 3); }
};

inline constexpr Frame kIFrame{Family::I};
inline constexpr Frame kJFrame{Family::J};

/// First partials of an I_0-independent free energy: derived from a body, or given as a
/// table (genus one, whose logarithm is never materialized).
class Partials {
 public:
  Partials() = default;

  static Partials from_body(Poly body, Frame fr = kIFrame) {
    Partials p;
    p.frame_ = fr;
    p.body_ = std::move(body);
    p.support_ = std::max(max_index(*p.body_, fr.family), 1);
    return p;
  }

  static Partials from_table(std::map<int, Poly> table, Frame fr = kIFrame) {
    Partials p;
    p.frame_ = fr;
    p.table_ = std::move(table);
    p.support_ = p.table_.empty() ? 0 : p.table_.rbegin()->first;
    return p;
  }

  Poly partial(int k) const {
    if (k < 1 || k > support_) return {};
    if (body_) return differentiate(*body_, frame_.x(k));
    auto it = table_.find(k);
    return it == table_.end() ? Poly{} : it->second;
  }

  const std::optional<Poly>& body() const { return body_; }
  Frame frame() const { return frame_; }
  int support() const { return support_; }

 private:
  Frame frame_{};
  std::optional<Poly> body_;
  std::map<int, Poly> table_;
  int support_ = 0;
};

/// sum_l c_l X_{l+1} dF/dX_l for an I_0-independent polynomial F.
inline Poly dx_restricted(const Poly& f, Frame fr = kIFrame) {
  int top = max_index(f, fr.family);
  for (auto& [m, c] : f)
    if (m.exponent(fr.unit()) != 0) top = std::max(top, 1);
  Poly r;
  for (int l = 1; l <= top; ++l) {
    Poly d = differentiate(f, fr.x(l));
    if (!d.is_zero()) r += Poly::var(fr.x(l + 1)) * d * fr.dx_coefficient(l);
  }
  return r;
}

inline Poly dx_restricted(const Partials& f) {
  Frame fr = f.frame();
  Poly r;
  for (int l = 1; l <= f.support(); ++l) {
    Poly d = f.partial(l);
    if (!d.is_zero()) r += Poly::var(fr.x(l + 1)) * d * fr.dx_coefficient(l);
  }
  return r;
}

/// d/dt_a at I_0 = 0, in the coordinates of the frame (J-frame partials carry the
/// (2a+1)!! rescaling implicitly).
inline Poly dt(const Partials& f, int a) {
  if (a == 0) return Poly::var(f.frame().unit()) * dx_restricted(f);
  return f.partial(a);
}

/// d^2/dt_a dt_b at I_0 = 0.
inline Poly dt2(const Partials& f, int a, int b) {
  if (a > b) std::swap(a, b);
  Frame fr = f.frame();
  if (a == 0 && b == 0) return Poly::var(fr.unit()) * dx_restricted(dt(f, 0), fr);
  if (a == 0) return differentiate(dt(f, 0), fr.x(b));
  return differentiate(f.partial(a), fr.x(b));
}

struct Solved {
  Poly body;
  std::map<int, Poly> partials;
};

namespace detail {

inline void check_reconstruction(const Solved& s, Frame fr, const std::string& what) {
  for (auto& [k, d] : s.partials) {
    Poly diff = differentiate(s.body, fr.x(k)) - d;
    if (!diff.is_zero())
      throw EngineError(what + ": derivative of the reconstructed free energy by " + name(fr.x(k)) +
                        " disagrees with the solved partial");
  }
}

inline void check_homogeneous(const Poly& p, int degree, const std::string& what) {
  for (auto& [m, c] : p)
    if (m.weighted_degree() != degree)
      throw EngineError(what + ": term of weighted degree " + std::to_string(m.weighted_degree()) + ", expected " +
                        std::to_string(degree));
}

}  // namespace detail

/// Descending solve in the I-frame for a free energy of weighted degree `degree`
/// supported on I_1..I_top:
///   (m+2)! (1-I_1) dF/dI_{m+1} = sum_{n>=2} (m+n+1)!/n! I_n dF/dI_{m+n} + source(m),
/// for m = top-1 .. 1, then 2(1-I_1) dF/dI_1 = sum_{n>=2} (n+1) I_n dF/dI_n, then
/// Euler reconstruction degree * F = sum_k (k-1) I_k dF/dI_k.
template <class Source>
Solved solve_i_frame(int degree, int top, Source&& source, const std::string& what) {
  Solved s;
  auto& d = s.partials;
  Poly v = Poly::var(var::v());
  for (int m = top - 1; m >= 1; --m) {
    Poly rhs = source(m);
    for (int n = 2; m + n <= top; ++n)
      rhs += Poly::var(var::I(n)) * d[m + n] * (factorial(m + n + 1) / factorial(n));
    d[m + 1] = v * rhs * (Rational(1) / factorial(m + 2));
  }
  Poly dil;
  for (int n = 2; n <= top; ++n) dil += Poly::var(var::I(n)) * d[n] * Rational(n + 1);
  d[1] = v * dil * Rational(1, 2);
  for (int k = 2; k <= top; ++k) s.body += Poly::var(var::I(k)) * d[k] * Rational(k - 1);
  s.body /= Rational(degree);
  detail::check_homogeneous(s.body, degree, what);
  detail::check_reconstruction(s, kIFrame, what);
  return s;
}

/// Descending solve in the J-frame:
///   (1-3J_1) dF/dJ_{m+1} = sum_{n>=2} (2n+1) J_n dF/dJ_{m+n} + source(m),
/// then (1-3J_1) dF/dJ_1 = sum_{n>=2} (2n+1) J_n dF/dJ_n and Euler reconstruction.
template <class Source>
Solved solve_j_frame(int degree, int top, Source&& source, const std::string& what) {
  Solved s;
  auto& d = s.partials;
  Poly w = Poly::var(var::w());
  for (int m = top - 1; m >= 1; --m) {
    Poly rhs = source(m);
    for (int n = 2; m + n <= top; ++n) rhs += Poly::var(var::J(n)) * d[m + n] * Rational(2 * n + 1);
    d[m + 1] = w * rhs;
  }
  Poly dil;
  for (int n = 2; n <= top; ++n) dil += Poly::var(var::J(n)) * d[n] * Rational(2 * n + 1);
  d[1] = w * dil;
  for (int k = 2; k <= top; ++k) s.body += Poly::var(var::J(k)) * d[k] * Rational(k - 1);
  s.body /= Rational(degree);
  detail::check_homogeneous(s.body, degree, what);
  detail::check_reconstruction(s, kJFrame, what);
  return s;
}

}  // namespace renorm
