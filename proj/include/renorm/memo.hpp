#pragma once

#include <map>
#include <mutex>

namespace renorm {

/// Per-key memo filled once per key; values are never mutated after insertion.
/// The recursive lock lets a computation consult lower keys of the same memo.
template <class Key, class Value>
class Memo {
 public:
  template <class Fn>
  const Value& get(const Key& k, Fn&& compute) {
    std::lock_guard lock(mu_);
    if (auto it = map_.find(k); it != map_.end()) return it->second;
    Value v = compute();
    return map_.emplace(k, std::move(v)).first->second;
  }

 private:
  std::recursive_mutex mu_;
  std::map<Key, Value> map_;
};

}  // namespace renorm
