#pragma once

// Functional union-find-with-explain value: a forest plus the chronological
// log of effective unions that built it, and the naive explain that peels
// unions off the end of the log one at a time.
//
// This layer is the reference the efficient explain is tested against, so it
// favours directness over speed.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ufe/certificates.hpp"
#include "ufe/error.hpp"
#include "ufe/uf_core.hpp"

namespace ufe {

enum class UnionPolicy { raw, by_size };

inline const char* to_string(UnionPolicy p) {
  return p == UnionPolicy::raw ? "raw" : "by_size";
}

/// Applies one union under the given policy; returns the root that was
/// attached below the other, or nullopt if x and y were already joined.
inline std::optional<Elem> apply_union(IntForest& f, UnionPolicy policy,
                                       Elem x, Elem y) {
  return policy == UnionPolicy::raw ? f.unite(x, y) : f.unite_by_size(x, y);
}

class UfeState {
 public:
  UfeState() = default;

  explicit UfeState(std::size_t n, UnionPolicy policy = UnionPolicy::raw)
      : n_(n), policy_(policy), forest_(n) {}

  /// Rebuilds a state from a log. Throws range_error for invalid elements and
  /// precondition_error if some union was not effective at its position.
  static UfeState replay(std::size_t n, UnionPolicy policy,
                         const UnionLog& unions) {
    UfeState st(n, policy);
    for (const auto& [a, b] : unions) {
      if (!st.try_union(a, b)) {
        throw precondition_error("log contains a redundant union");
      }
    }
    return st;
  }

  std::size_t size() const noexcept { return n_; }
  UnionPolicy policy() const noexcept { return policy_; }
  const UnionLog& unions() const noexcept { return unions_; }
  const IntForest& forest() const noexcept { return forest_; }

  Elem rep_of(Elem x) const { return forest_.rep_of(x); }
  bool same_class(Elem x, Elem y) const { return rep_of(x) == rep_of(y); }

  friend bool operator==(const UfeState&, const UfeState&) = default;

 private:
  friend std::optional<UfeState> ufe_union(const UfeState&, Elem, Elem);

  bool try_union(Elem a, Elem b) {
    if (!apply_union(forest_, policy_, a, b)) return false;
    unions_.emplace_back(a, b);
    return true;
  }

  std::size_t n_ = 0;
  UnionPolicy policy_ = UnionPolicy::raw;
  UnionLog unions_;
  IntForest forest_;
};

inline UfeState ufe_init(std::size_t n,
                         UnionPolicy policy = UnionPolicy::raw) {
  return UfeState(n, policy);
}

/// The state with (a, b) appended, or nullopt when the union is redundant
/// (a and b already share a representative).
inline std::optional<UfeState> ufe_union(const UfeState& st, Elem a, Elem b) {
  UfeState next = st;
  if (!next.try_union(a, b)) return std::nullopt;
  return next;
}

/// The state before the last union.
inline UfeState rollback(const UfeState& st) {
  if (st.unions().empty()) {
    throw precondition_error("rollback on an empty union log");
  }
  UnionLog prefix(st.unions().begin(), st.unions().end() - 1);
  return UfeState::replay(st.size(), st.policy(), prefix);
}

/// True iff every union in the log was effective when applied in order.
inline bool eff_unions(std::size_t n, UnionPolicy policy,
                       const UnionLog& unions) {
  IntForest f(n);
  for (const auto& [a, b] : unions) {
    if (a >= n || b >= n) return false;
    if (!apply_union(f, policy, a, b)) return false;
  }
  return true;
}

/// Naive explain. Precomputes the representative of every element after every
/// log prefix, so rolling back is an index decrement. Memory is
/// n * (|log| + 1) entries; meant for small oracle states.
class NaiveExplainer {
 public:
  explicit NaiveExplainer(const UfeState& st)
      : n_(st.size()), unions_(st.unions()) {
    const std::size_t m = unions_.size();
    reps_.resize(n_ * (m + 1));
    IntForest f(n_);
    for (std::size_t k = 0;; ++k) {
      for (Elem x = 0; x < n_; ++x) reps_[k * n_ + x] = f.rep_of(x);
      if (k == m) break;
      apply_union(f, st.policy(), unions_[k].first, unions_[k].second);
    }
  }

  /// Representative of x after the first k unions.
  Elem rep_after(std::size_t k, Elem x) const { return reps_[k * n_ + x]; }

  /// Peels the newest union off until it separates x from y, then splits the
  /// problem at that union. Assumes x and y are equivalent; otherwise the
  /// result is still a proof term, just not one concluding (x, y).
  EqProof explain(Elem x, Elem y) const {
    if (x >= n_) throw range_error(x, n_);
    if (y >= n_) throw range_error(y, n_);

    struct Task {
      bool combine;
      std::size_t k;  // log prefix length, or the union index when combining
      Elem x;
      Elem y;
      bool forward;
    };
    EqProof proof;
    std::vector<EqProof::node_id> values;
    std::vector<Task> tasks{{false, unions_.size(), x, y, false}};
    while (!tasks.empty()) {
      Task t = tasks.back();
      tasks.pop_back();
      if (t.combine) {
        const auto rhs = values.back();
        values.pop_back();
        const auto lhs = values.back();
        values.pop_back();
        auto mid = proof.add_assm(t.k);
        if (!t.forward) mid = proof.add_sym(mid);
        values.push_back(proof.add_chain(lhs, mid, rhs));
        continue;
      }
      std::size_t k = t.k;
      while (k > 0 && rep_after(k - 1, t.x) == rep_after(k - 1, t.y)) --k;
      if (k == 0) {
        values.push_back(proof.add_refl(t.x));
        continue;
      }
      const std::size_t m = k - 1;
      const auto [a, b] = unions_[m];
      if (rep_after(m, t.x) == rep_after(m, a)) {
        tasks.push_back({true, m, 0, 0, true});
        tasks.push_back({false, m, b, t.y, false});
        tasks.push_back({false, m, t.x, a, false});
      } else {
        tasks.push_back({true, m, 0, 0, false});
        tasks.push_back({false, m, a, t.y, false});
        tasks.push_back({false, m, t.x, b, false});
      }
    }
    return proof;
  }

  /// Some(explain) exactly when x and y are equivalent under the log.
  std::optional<EqProof> explain_partial(Elem x, Elem y) const {
    if (x == y) return refl(x);
    if (x >= n_ || y >= n_) return std::nullopt;
    const std::size_t m = unions_.size();
    if (rep_after(m, x) != rep_after(m, y)) return std::nullopt;
    return explain(x, y);
  }

 private:
  std::size_t n_;
  UnionLog unions_;
  std::vector<Elem> reps_;
};

inline EqProof explain_naive(const UfeState& st, Elem x, Elem y) {
  return NaiveExplainer(st).explain(x, y);
}

inline std::optional<EqProof> explain_partial(const UfeState& st, Elem x,
                                              Elem y) {
  if (x == y) return refl(x);
  if (x >= st.size() || y >= st.size() || !st.same_class(x, y)) {
    return std::nullopt;
  }
  return explain_naive(st, x, y);
}

}  // namespace ufe
