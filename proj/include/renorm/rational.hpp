#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace renorm {

/// Exact fraction, always reduced with positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T n) : q_(mpz_class(static_cast<long>(n))) {}  // NOLINT(google-explicit-constructor)

  template <std::integral T, std::integral U>
  Rational(T n, U d) : q_(mpz_class(static_cast<long>(n)), mpz_class(static_cast<long>(d))) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
  }

  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  Rational(const mpz_class& n, const mpz_class& d) : q_(n, d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
  }

  /// Accepts "p", "-p" and "p/q".
  static Rational parse(std::string_view s) {
    std::string str(s);
    if (str.empty()) throw std::invalid_argument("Rational: empty string");
    mpq_class q;
    if (q.set_str(str, 10) != 0) throw std::invalid_argument("Rational: cannot parse '" + str + "'");
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    return Rational(q);
  }

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// "p/q" with the denominator always present.
  std::string str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

  /// "p" for integers, "p/q" otherwise.
  std::string short_str() const { return is_integer() ? q_.get_num().get_str() : str(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const {
    return std::hash<std::string>{}(str());
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.short_str(); }

 private:
  mpq_class q_{0};
};

inline Rational pow(Rational base, unsigned e) {
  Rational r(1);
  while (e) {
    if (e & 1U) r *= base;
    base *= base;
    e >>= 1U;
  }
  return r;
}

inline mpz_class factorial_z(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Rational factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  return Rational(factorial_z(static_cast<unsigned>(n)), mpz_class(1));
}

/// (2k+1)!! with the convention (-1)!! = 1.
inline Rational odd_double_factorial(int k) {
  if (k < -1) throw std::domain_error("double factorial below -1");
  Rational r(1);
  for (int j = 1; j <= 2 * k + 1; j += 2) r *= Rational(j);
  return r;
}

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r, mpz_class(1));
}

/// Generalized binomial coefficient C(a, k) for rational a.
inline Rational binomial(const Rational& a, int k) {
  Rational r(1);
  for (int j = 0; j < k; ++j) r *= (a - Rational(j)) / Rational(j + 1);
  return r;
}

}  // namespace renorm
