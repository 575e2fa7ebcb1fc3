#pragma once

#include "renorm/poly.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

namespace renorm {

inline std::string exponent_string(VarId x, int stored) {
  if (x.family == Family::zeta) return std::to_string(stored) + "/2";
  return std::to_string(stored);
}

inline int parse_exponent(VarId x, const std::string& s) {
  auto slash = s.find('/');
  if (x.family == Family::zeta) {
    if (slash == std::string::npos) return 2 * std::stoi(s);
    if (s.substr(slash + 1) != "2") throw std::invalid_argument("zeta exponent must have denominator 2");
    return std::stoi(s.substr(0, slash));
  }
  if (slash != std::string::npos) throw std::invalid_argument("fractional exponent for " + name(x));
  return std::stoi(s);
}

/// Canonical JSON form; terms appear in canonical monomial order.
inline nlohmann::json to_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& [m, c] : p) {
    nlohmann::json mono = nlohmann::json::object();
    for (auto& [x, e] : m.entries()) mono[name(x)] = exponent_string(x, e);
    terms.push_back({{"coeff", c.str()}, {"monomial", mono}});
  }
  return {{"terms", terms}};
}

inline Poly poly_from_json(const nlohmann::json& j) {
  Poly p;
  for (auto& t : j.at("terms")) {
    std::vector<Monomial::Entry> entries;
    for (auto& [k, val] : t.at("monomial").items()) {
      VarId x = parse_var(k);
      entries.push_back({x, parse_exponent(x, val.get<std::string>())});
    }
    p.add_term(Monomial::from_entries(entries), Rational::parse(t.at("coeff").get<std::string>()));
  }
  return p;
}

inline std::string to_text(const Monomial& m) {
  std::string s;
  for (auto& [x, e] : m.entries()) {
    if (!s.empty()) s += "*";
    s += name(x);
    if (x.family == Family::zeta) {
      if (e != 2) s += (e % 2 == 0) ? "^" + std::to_string(e / 2) : "^(" + std::to_string(e) + "/2)";
    } else if (e != 1) {
      s += "^" + std::to_string(e);
    }
  }
  return s;
}

/// Plain-text rendering, e.g. "5/24*I2^2*v^3 + 1/8*I3*v^2".
inline std::string to_text(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : p) {
    Rational a = c.sign() < 0 ? -c : c;
    if (first)
      s += c.sign() < 0 ? "-" : "";
    else
      s += c.sign() < 0 ? " - " : " + ";
    first = false;
    if (m.is_one()) {
      s += a.short_str();
    } else {
      if (!a.is_one()) s += a.short_str() + "*";
      s += to_text(m);
    }
  }
  return s;
}

/// Inverse of to_text: parses "5/24*v^3*I2^2 - I3 + 2" and zeta powers such as "zeta^(-3/2)".
inline Poly parse_text(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("parse_text: empty input");
  if (s == "0") return {};
  Poly out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    // a term ends at the next top-level sign not inside parentheses or right after '^'
    std::size_t j = i;
    int depth = 0;
    for (; j < s.size(); ++j) {
      char ch = s[j];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth == 0 && (ch == '+' || ch == '-') && j > i && s[j - 1] != '^') break;
    }
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("parse_text: empty term in '" + std::string(text) + "'");
    Rational coeff(sign);
    Monomial mono;
    std::size_t k = 0;
    while (k <= term.size()) {
      std::size_t star = term.find('*', k);
      std::string factor = term.substr(k, star == std::string::npos ? std::string::npos : star - k);
      if (factor.empty()) throw std::invalid_argument("parse_text: empty factor in '" + term + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coeff *= Rational::parse(factor);
      } else {
        auto caret = factor.find('^');
        VarId x = parse_var(factor.substr(0, caret));
        int stored = x.family == Family::zeta ? 2 : 1;
        if (caret != std::string::npos) {
          std::string e = factor.substr(caret + 1);
          if (!e.empty() && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
          if (x.family == Family::zeta) {
            auto slash = e.find('/');
            stored = slash == std::string::npos ? 2 * std::stoi(e) : std::stoi(e.substr(0, slash));
            if (slash != std::string::npos && e.substr(slash + 1) != "2")
              throw std::invalid_argument("parse_text: zeta exponents are multiples of 1/2");
          } else {
            stored = std::stoi(e);
          }
        }
        mono = mono * Monomial::of(x, stored);
      }
      if (star == std::string::npos) break;
      k = star + 1;
    }
    out.add_term(mono, coeff);
    i = j;
  }
  return out;
}

struct LatexStyle {
  bool tilde = false;  ///< render I_k / J_k as \tilde{I}_k
};

/// LaTeX in the fraction style of the source tables: v^p and w^p become
/// denominators (1-I_1)^p and (1-3J_1)^p.
inline std::string to_latex(const Poly& p, LatexStyle style = {}) {
  if (p.is_zero()) return "0";
  auto sym = [&](VarId x) -> std::string {
    switch (x.family) {
      case Family::I: return (style.tilde ? "\\tilde{I}_{" : "I_{") + std::to_string(x.index) + "}";
      case Family::J: return (style.tilde ? "\\tilde{J}_{" : "J_{") + std::to_string(x.index) + "}";
      case Family::t: return "t_{" + std::to_string(x.index) + "}";
      case Family::GhostI: return "I_{-" + std::to_string(x.index) + "}";
      case Family::N: return "N";
      case Family::tHooft: return "t";
      case Family::zeta: return "\\zeta";
      default: return name(x);
    }
  };
  auto power = [](const std::string& base, int e) { return e == 1 ? base : base + "^{" + std::to_string(e) + "}"; };
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : p) {
    Rational a = c.sign() < 0 ? -c : c;
    if (first)
      os << (c.sign() < 0 ? "-" : "");
    else
      os << (c.sign() < 0 ? "-" : "+");
    first = false;
    std::string numer;
    std::string denom;
    for (auto& [x, e] : m.entries()) {
      if (x.family == Family::v) {
        denom = power("(1-I_1)", e);
      } else if (x.family == Family::w) {
        denom = power("(1-3J_1)", e);
      } else if (x.family == Family::zeta) {
        numer += e % 2 == 0 ? power(sym(x), e / 2) : sym(x) + "^{" + std::to_string(e) + "/2}";
      } else {
        numer += power(sym(x), e);
      }
    }
    if (!a.is_integer()) {
      os << "\\frac{" << a.num().get_str() << "}{" << a.den().get_str() << "}";
    } else if (!a.is_one() || (numer.empty() && denom.empty())) {
      os << a.num().get_str();
    }
    if (!denom.empty())
      os << "\\frac{" << (numer.empty() ? "1" : numer) << "}{" << denom << "}";
    else
      os << numer;
  }
  return os.str();
}

}  // namespace renorm
