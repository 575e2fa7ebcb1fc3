#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace renorm {

/// Variable families. Declaration order is the monomial-order rank.
enum class Family : std::uint8_t { v, w, N, tHooft, I, J, t, GhostI, zeta };

/// A formal variable. GhostI with index n stands for I_{-n}; nullary families use index 0.
struct VarId {
  Family family{Family::I};
  int index{0};

  friend bool operator==(const VarId&, const VarId&) = default;
  friend std::strong_ordering operator<=>(const VarId&, const VarId&) = default;
};

constexpr bool is_nullary(Family f) {
  return f == Family::v || f == Family::w || f == Family::N || f == Family::tHooft || f == Family::zeta;
}

/// Families whose exponents count towards a series' factor budget.
constexpr bool is_counted(Family f) {
  return f == Family::I || f == Family::t || f == Family::J || f == Family::GhostI;
}

namespace var {
inline VarId I(int k) { return {Family::I, k}; }
inline VarId t(int k) { return {Family::t, k}; }
inline VarId J(int k) { return {Family::J, k}; }
inline VarId ghost(int n) {
  if (n < 1) throw std::invalid_argument("ghost index must be >= 1");
  return {Family::GhostI, n};
}
inline VarId v() { return {Family::v, 0}; }
inline VarId w() { return {Family::w, 0}; }
inline VarId N() { return {Family::N, 0}; }
inline VarId tH() { return {Family::tHooft, 0}; }
inline VarId zeta() { return {Family::zeta, 0}; }
}  // namespace var

inline int standard_weight(VarId x) {
  switch (x.family) {
    case Family::I:
    case Family::t:
    case Family::J: return x.index - 1;
    case Family::GhostI: return -x.index - 1;
    default: return 0;
  }
}

/// Weight function used for weighted degrees; defaults to deg I_k = deg t_k = deg J_k = k-1.
struct Grading {
  std::function<int(VarId)> weight = standard_weight;
  int operator()(VarId x) const { return weight(x); }
};

inline std::string name(VarId x) {
  switch (x.family) {
    case Family::I: return "I" + std::to_string(x.index);
    case Family::t: return "t" + std::to_string(x.index);
    case Family::J: return "J" + std::to_string(x.index);
    case Family::GhostI: return "Im" + std::to_string(x.index);
    case Family::v: return "v";
    case Family::w: return "w";
    case Family::N: return "N";
    case Family::tHooft: return "tH";
    case Family::zeta: return "zeta";
  }
  return "?";
}

inline VarId parse_var(std::string_view s) {
  auto indexed = [&](std::size_t skip, Family f) {
    std::string digits(s.substr(skip));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad variable name '" + std::string(s) + "'");
    return VarId{f, std::stoi(digits)};
  };
  if (s == "v") return var::v();
  if (s == "w") return var::w();
  if (s == "N") return var::N();
  if (s == "tH") return var::tH();
  if (s == "zeta") return var::zeta();
  if (s.starts_with("Im")) return indexed(2, Family::GhostI);
  if (s.starts_with("I")) return indexed(1, Family::I);
  if (s.starts_with("t")) return indexed(1, Family::t);
  if (s.starts_with("J")) return indexed(1, Family::J);
  throw std::invalid_argument("bad variable name '" + std::string(s) + "'");
}

}  // namespace renorm
