#pragma once

#include "renorm/variable.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace renorm {

/// Sparse exponent map. Zeta exponents are stored doubled so half-integers stay integral;
/// every other family has non-negative integer exponents.
class Monomial {
 public:
  using Entry = std::pair<VarId, int>;

  Monomial() = default;

  /// `stored` is the doubled exponent when x is zeta.
  static Monomial of(VarId x, int stored = 1) {
    Monomial m;
    if (stored != 0) {
      check(x, stored);
      m.e_.push_back({x, stored});
      m.wdeg_ = standard_weight(x) * stored;
    }
    return m;
  }

  static Monomial from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end());
    Monomial m;
    for (auto& [x, e] : entries) {
      if (!m.e_.empty() && m.e_.back().first == x)
        m.e_.back().second += e;
      else
        m.e_.push_back({x, e});
    }
    std::erase_if(m.e_, [](const Entry& en) { return en.second == 0; });
    for (auto& [x, e] : m.e_) {
      check(x, e);
      m.wdeg_ += standard_weight(x) * e;
    }
    return m;
  }

  const std::vector<Entry>& entries() const { return e_; }
  bool is_one() const { return e_.empty(); }

  int exponent(VarId x) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), x, [](const Entry& a, VarId b) { return a.first < b; });
    return (it != e_.end() && it->first == x) ? it->second : 0;
  }

  /// Weighted degree under the standard grading (cached).
  int weighted_degree() const { return wdeg_; }

  int weighted_degree(const Grading& g) const {
    int d = 0;
    for (auto& [x, e] : e_) d += g(x) * e;
    return d;
  }

  /// Number of counted variable factors (families I, t, J, GhostI).
  int factor_count() const {
    int c = 0;
    for (auto& [x, e] : e_)
      if (is_counted(x.family)) c += e;
    return c;
  }

  /// Stored exponent of zeta (doubled).
  int zeta2() const { return exponent(var::zeta()); }

  int max_index(Family f) const {
    int m = -1;
    for (auto& [x, e] : e_)
      if (x.family == f) m = std::max(m, x.index);
    return m;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    auto a = e_.begin();
    auto b = o.e_.begin();
    while (a != e_.end() || b != o.e_.end()) {
      if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
        r.e_.push_back(*a++);
      } else if (a == e_.end() || b->first < a->first) {
        r.e_.push_back(*b++);
      } else {
        int s = a->second + b->second;
        if (s != 0) r.e_.push_back({a->first, s});
        ++a;
        ++b;
      }
    }
    r.wdeg_ = wdeg_ + o.wdeg_;
    return r;
  }

  /// Changes the stored exponent of x by `delta`; the result must stay valid.
  Monomial shifted(VarId x, int delta) const {
    Monomial r = *this;
    auto it = std::lower_bound(r.e_.begin(), r.e_.end(), x, [](const Entry& a, VarId b) { return a.first < b; });
    if (it != r.e_.end() && it->first == x) {
      it->second += delta;
      check(x, it->second);
      if (it->second == 0) r.e_.erase(it);
    } else if (delta != 0) {
      check(x, delta);
      r.e_.insert(it, {x, delta});
    }
    r.wdeg_ += standard_weight(x) * delta;
    return r;
  }

  /// This monomial with x removed.
  Monomial without(VarId x) const { return shifted(x, -exponent(x)); }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

  /// Graded-lexicographic: weighted degree first, then the sorted exponent lists.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.wdeg_ != b.wdeg_) return a.wdeg_ < b.wdeg_;
    return a.e_ < b.e_;
  }

  std::size_t hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto& [x, e] : e_) {
      std::size_t k = (static_cast<std::size_t>(x.family) << 40) ^ (static_cast<std::size_t>(x.index + 4096) << 20) ^
                      static_cast<std::size_t>(e + 4096);
      h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  static void check(VarId x, int e) {
    if (x.family == Family::zeta) return;
    if (e < 0) throw std::domain_error("negative exponent for " + name(x));
  }

  std::vector<Entry> e_;
  int wdeg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace renorm
