#pragma once

#include "renorm/format.hpp"
#include "renorm/poly.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace renorm {

/// Outcome of checking one identity. On failure `first` holds the first differing
/// coefficient (canonical order) as (monomial, lhs - rhs).
struct Check {
  std::string label;
  bool pass = true;
  std::optional<std::pair<Monomial, Rational>> first;
  std::string detail;

  std::string describe() const {
    std::string s = (pass ? "ok   " : "FAIL ") + label;
    if (first) s += "  [" + (first->first.is_one() ? std::string("1") : to_text(first->first)) + ": " + first->second.short_str() + "]";
    if (!detail.empty()) s += "  " + detail;
    return s;
  }
};

/// Compares two polynomials exactly.
inline Check check_equal(std::string label, const Poly& lhs, const Poly& rhs) {
  Check c{std::move(label)};
  Poly diff = lhs - rhs;
  if (!diff.is_zero()) {
    c.pass = false;
    c.first = *diff.begin();
  }
  return c;
}

inline Check check_zero(std::string label, const Poly& residual) { return check_equal(std::move(label), residual, Poly{}); }

inline bool all_pass(const std::vector<Check>& cs) {
  for (auto& c : cs)
    if (!c.pass) return false;
  return true;
}

}  // namespace renorm
