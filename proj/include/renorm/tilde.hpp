#pragma once

#include "renorm/format.hpp"
#include "renorm/free_energy.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace renorm {

/// Raised when a free energy does not have the exponent pattern a normalization needs.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Print conventions for 1D and matrix-model free energies:
///   plain:     I~_j = I_j / (1-I_1)^{(j+1)/2}
///   factorial: I~_j = I_j / ((j+1)! (1-I_1)^{(j+1)/2})
enum class Tilde { plain, factorial };

/// Rewrites F(v, I_k, N, tH) in the tilde variables; the result uses I-symbols for I~.
inline Poly to_tilde(const Poly& f, Tilde conv) {
  Poly r;
  for (auto& [m, c] : f) {
    int twice = 0;
    Rational scale(1);
    std::vector<Monomial::Entry> kept;
    for (auto& [x, e] : m.entries()) {
      if (x.family == Family::v) continue;
      if (x.family == Family::I) {
        if (x.index < 2) throw StructuralError("tilde form needs I_0- and bare I_1-free input");
        twice += e * (x.index + 1);
        if (conv == Tilde::factorial) scale *= pow(factorial(x.index + 1), static_cast<unsigned>(e));
      } else if (x.family != Family::N && x.family != Family::tHooft) {
        throw StructuralError("unexpected variable " + name(x) + " in a tilde conversion");
      }
      kept.push_back({x, e});
    }
    if (twice != 2 * m.exponent(var::v()))
      throw StructuralError("v-exponent of " + to_text(m) + " does not match sum m_j (j+1)/2");
    r.add_term(Monomial::from_entries(kept), c * scale);
  }
  return r;
}

/// Inverse of to_tilde.
inline Poly from_tilde(const Poly& t, Tilde conv) {
  Poly r;
  for (auto& [m, c] : t) {
    int twice = 0;
    Rational scale(1);
    for (auto& [x, e] : m.entries()) {
      if (x.family != Family::I) continue;
      twice += e * (x.index + 1);
      if (conv == Tilde::factorial) scale *= pow(factorial(x.index + 1), static_cast<unsigned>(e));
    }
    if (twice % 2 != 0) throw StructuralError("half-integer (1-I_1) power in " + to_text(m));
    r.add_term(m * Monomial::of(var::v(), twice / 2), c / scale);
  }
  return r;
}

/// Rewrites a 2D free energy in (w, J) as a polynomial in I~_j = I_j/(1-I_1)^{(2j+1)/3},
/// using J_k = I_k/(2k+1)!! and 1-3J_1 = 1-I_1.
inline Poly j_to_i_tilde(const Poly& f) {
  Poly r;
  for (auto& [m, c] : f) {
    int thrice = 0;
    Rational scale(1);
    std::vector<Monomial::Entry> kept;
    for (auto& [x, e] : m.entries()) {
      if (x.family == Family::w) continue;
      if (x.family != Family::J || x.index < 2)
        throw StructuralError("unexpected variable " + name(x) + " in a J-to-I conversion");
      thrice += e * (2 * x.index + 1);
      scale /= pow(odd_double_factorial(x.index), static_cast<unsigned>(e));
      kept.push_back({var::I(x.index), e});
    }
    if (thrice != 3 * m.exponent(var::w()))
      throw StructuralError("w-exponent of " + to_text(m) + " does not match sum l_j (2j+1)/3");
    r.add_term(Monomial::from_entries(kept), c * scale);
  }
  return r;
}

/// Inverse of j_to_i_tilde.
inline Poly i_tilde_to_j(const Poly& t) {
  Poly r;
  for (auto& [m, c] : t) {
    int thrice = 0;
    Rational scale(1);
    std::vector<Monomial::Entry> kept;
    for (auto& [x, e] : m.entries()) {
      if (x.family != Family::I) throw StructuralError("unexpected variable " + name(x));
      thrice += e * (2 * x.index + 1);
      scale *= pow(odd_double_factorial(x.index), static_cast<unsigned>(e));
      kept.push_back({var::J(x.index), e});
    }
    if (thrice % 3 != 0) throw StructuralError("fractional (1-I_1) power in " + to_text(m));
    kept.push_back({var::w(), thrice / 3});
    r.add_term(Monomial::from_entries(kept), c * scale);
  }
  return r;
}

/// Rewrites a 2D free energy in (w, J) in (v, I) with J_k = I_k/(2k+1)!! and w = v.
inline Poly j_to_iv(const Poly& f) {
  Poly r;
  for (auto& [m, c] : f) {
    Rational scale(1);
    std::vector<Monomial::Entry> kept;
    for (auto& [x, e] : m.entries()) {
      if (x.family == Family::w) {
        kept.push_back({var::v(), e});
      } else if (x.family == Family::J) {
        scale /= pow(odd_double_factorial(x.index), static_cast<unsigned>(e));
        kept.push_back({var::I(x.index), e});
      } else {
        throw StructuralError("unexpected variable " + name(x) + " in a J-to-I conversion");
      }
    }
    r.add_term(Monomial::from_entries(kept), c * scale);
  }
  return r;
}

/// Exponent pattern j -> m_j of a product of tau_j insertions.
using Pattern = std::map<int, int>;

/// Correlator values; polynomial in N for the matrix model, constants otherwise.
using CorrelatorTable = std::map<Pattern, Poly>;

inline std::string pattern_text(const Pattern& p) {
  std::string s;
  for (auto& [j, e] : p) {
    if (!s.empty()) s += " ";
    s += "tau" + std::to_string(j) + (e == 1 ? "" : "^" + std::to_string(e));
  }
  return s;
}

/// Correlators from a plain tilde form: coefficient of prod I~_j^{m_j} times prod m_j!.
inline CorrelatorTable correlators_from_tilde(const Poly& t) {
  CorrelatorTable out;
  for (auto& [m, c] : t) {
    Pattern pat;
    Rational sym(1);
    std::vector<Monomial::Entry> params;
    for (auto& [x, e] : m.entries()) {
      if (x.family == Family::I) {
        pat[x.index] = e;
        sym *= factorial(e);
      } else {
        params.push_back({x, e});
      }
    }
    out[pat].add_term(Monomial::from_entries(params), c * sym);
  }
  return out;
}

}  // namespace renorm
