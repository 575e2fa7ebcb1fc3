#pragma once

#include "renorm/format.hpp"
#include "renorm/poly.hpp"
#include "renorm/tilde.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <vector>

namespace renorm {
// readable failure messages in gtest
inline void PrintTo(const Poly& p, std::ostream* os) { *os << (p.is_zero() ? std::string("0") : to_text(p)); }
}  // namespace renorm

namespace testsupport {

using renorm::Monomial;
using renorm::Poly;
using renorm::Rational;

/// Random polynomial in v, N and I_0..I_max_i with small rational coefficients.
inline Poly random_poly(std::mt19937& rng, int max_terms = 5, int max_i = 4, int max_exp = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> idx(0, max_i);
  std::uniform_int_distribution<int> ex(1, max_exp);
  std::uniform_int_distribution<int> nfac(0, 3);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  Poly p;
  for (int t = nterms(rng); t > 0; --t) {
    Monomial m;
    for (int f = nfac(rng); f > 0; --f) m = m * Monomial::of(renorm::var::I(idx(rng)), ex(rng));
    if (rng() % 2) m = m * Monomial::of(renorm::var::v(), ex(rng));
    if (rng() % 3 == 0) m = m * Monomial::of(renorm::var::N(), ex(rng));
    p.add_term(m, Rational(num(rng), den(rng)));
  }
  return p;
}

/// Random polynomial in I_2..I_{max_i} that is homogeneous of the given weighted degree
/// (deg I_k = k-1), times powers of v.
inline Poly random_homogeneous(std::mt19937& rng, int degree, int max_i = 6, int max_terms = 4) {
  std::uniform_int_distribution<int> idx(2, max_i);
  std::uniform_int_distribution<int> num(-9, 9);
  Poly p;
  for (int t = 0; t < max_terms; ++t) {
    Monomial m = Monomial::of(renorm::var::v(), 1 + static_cast<int>(rng() % 4));
    int left = degree;
    while (left > 0) {
      int k = std::min(idx(rng), left + 1);
      m = m * Monomial::of(renorm::var::I(k), 1);
      left -= k - 1;
    }
    p.add_term(m, Rational(num(rng), 1 + static_cast<int>(rng() % 5)));
  }
  return p;
}

/// Intersection numbers <tau_{d_1} ... tau_{d_n}>_g on the moduli of curves, from the
/// string and dilaton equations and the DVV recursion. Independent of the renormalized
/// engines; used as an oracle for the 2D free energies.
class IntersectionOracle {
 public:
  Rational operator()(int g, std::vector<int> d) {
    std::sort(d.begin(), d.end());
    return get(g, d);
  }

 private:
  using Key = std::pair<int, std::vector<int>>;
  std::map<Key, Rational> memo_;

  static Rational dfact(int k) {  // (2k+1)!!
    return renorm::odd_double_factorial(k);
  }

  Rational get(int g, const std::vector<int>& d) {
    const int n = static_cast<int>(d.size());
    if (g < 0 || n == 0 || 2 * g - 2 + n <= 0) return Rational(0);
    int sum = 0;
    for (int x : d) {
      if (x < 0) return Rational(0);
      sum += x;
    }
    if (sum != 3 * g - 3 + n) return Rational(0);
    if (g == 0 && n == 3) return Rational(1);
    if (g == 1 && n == 1) return Rational(1, 24);
    Key key{g, d};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational r = compute(g, d);
    memo_.emplace(key, r);
    return r;
  }

  Rational sorted_get(int g, std::vector<int> d) {
    std::sort(d.begin(), d.end());
    return get(g, d);
  }

  Rational compute(int g, const std::vector<int>& d) {
    const int n = static_cast<int>(d.size());
    if (d.front() == 0) {  // string equation
      std::vector<int> rest(d.begin() + 1, d.end());
      Rational r(0);
      for (std::size_t j = 0; j < rest.size(); ++j) {
        auto e = rest;
        --e[j];
        r += sorted_get(g, e);
      }
      return r;
    }
    if (d.front() == 1) {  // dilaton equation
      std::vector<int> rest(d.begin() + 1, d.end());
      return Rational(2 * g - 2 + n - 1) * sorted_get(g, rest);
    }
    // DVV with the largest insertion tau_{k+1}
    const int k = d.back() - 1;
    std::vector<int> rest(d.begin(), d.end() - 1);
    Rational r(0);
    for (std::size_t j = 0; j < rest.size(); ++j) {
      auto e = rest;
      int dj = e[j];
      e[j] += k;
      r += dfact(k + dj) / dfact(dj - 1) * sorted_get(g, e);
    }
    const int m = static_cast<int>(rest.size());
    for (int a = 0; a <= k - 1; ++a) {
      int b = k - 1 - a;
      Rational c = dfact(a) * dfact(b) / Rational(2);
      auto e = rest;
      e.push_back(a);
      e.push_back(b);
      r += c * sorted_get(g - 1, e);
      for (int g1 = 0; g1 <= g; ++g1)
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
          std::vector<int> left{a}, right{b};
          for (int j = 0; j < m; ++j) (mask >> j & 1u ? left : right).push_back(rest[j]);
          r += c * sorted_get(g1, left) * sorted_get(g - g1, right);
        }
    }
    return r / dfact(k + 1);
  }
};

}  // namespace testsupport
