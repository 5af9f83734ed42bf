#pragma once

// Random state generators shared by the unit and acceptance suites.
//
// States are built the way the structural induction over the log works:
// start from init(n) and append effective unions one at a time.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "ufe/ufe_log.hpp"

namespace ufe::testing {

/// Up to `count` effective unions drawn uniformly from the not-yet-joined
/// pairs; stops early once everything is one class.
inline UfeState random_state(std::mt19937_64& rng, std::size_t n,
                             UnionPolicy policy, std::size_t count) {
  UfeState st = ufe_init(n, policy);
  if (n < 2) return st;
  std::uniform_int_distribution<Elem> pick(0, n - 1);
  std::size_t classes = n;
  while (st.unions().size() < count && classes > 1) {
    const Elem a = pick(rng);
    const Elem b = pick(rng);
    if (auto next = ufe_union(st, a, b)) {
      st = std::move(*next);
      --classes;
    }
  }
  return st;
}

/// Random state with a uniformly random number of unions in [0, n-1].
inline UfeState random_state(std::mt19937_64& rng, std::size_t n,
                             UnionPolicy policy) {
  const std::size_t hi = n == 0 ? 0 : n - 1;
  std::uniform_int_distribution<std::size_t> len(0, hi);
  return random_state(rng, n, policy, len(rng));
}

/// Every (x, y) with x, y < n in the same class.
inline std::vector<std::pair<Elem, Elem>> same_class_pairs(const UfeState& st) {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem x = 0; x < st.size(); ++x) {
    for (Elem y = 0; y < st.size(); ++y) {
      if (st.same_class(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

/// floor(log2(v)) for v >= 1.
inline std::size_t floor_log2(std::size_t v) {
  std::size_t r = 0;
  while (v >>= 1) ++r;
  return r;
}

}  // namespace ufe::testing
