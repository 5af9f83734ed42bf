#pragma once

// Efficient explain over the annotated union forest.
//
// Each forest edge carries the index of the union that created it, stored at
// the child end (the root that got attached). To explain x = y, look at the
// tree path x - lca - y: the newest union on it is the last one needed, and
// it splits the problem into two strictly older subproblems.
//
// The forest must be uncompressed: compression rewires edges and would lose
// the annotation structure.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ufe/certificates.hpp"
#include "ufe/error.hpp"
#include "ufe/uf_core.hpp"
#include "ufe/ufe_log.hpp"

namespace ufe {

/// Optional union index; std::optional already orders nullopt below every
/// engaged value.
using OptIdx = std::optional<UnionIdx>;

/// Number of times any explain run out of fuel in this process.
inline std::atomic<std::uint64_t>& fuel_exhaustion_count() {
  static std::atomic<std::uint64_t> count{0};
  return count;
}

/// Read-only view of a forest with edge annotations and the union log.
struct AnnotatedForest {
  const IntForest& forest;
  std::span<const OptIdx> au;
  std::span<const UnionPair> log;
};

/// Edge annotations of st, by replaying its log: each effective union marks
/// the root it attached with its own log index.
inline std::vector<OptIdx> assoc_unions(const UfeState& st) {
  std::vector<OptIdx> au(st.size());
  IntForest f(st.size());
  for (UnionIdx i = 0; i < st.unions().size(); ++i) {
    const auto [a, b] = st.unions()[i];
    const auto attached = apply_union(f, st.policy(), a, b);
    if (!attached) throw precondition_error("log contains a redundant union");
    au[*attached] = i;
  }
  return au;
}

/// Vertices on the path from rep_of(x) down to x, both inclusive.
inline std::vector<Elem> awalk_verts_from_rep(const IntForest& uf, Elem x) {
  std::vector<Elem> walk{x};
  std::size_t steps = 0;
  while (!uf.is_root(x)) {
    if (++steps > uf.size()) throw corruption_error("cycle in forest");
    x = uf.parent_of(x);
    walk.push_back(x);
  }
  std::reverse(walk.begin(), walk.end());
  return walk;
}

/// Last vertex of the longest common prefix of the two root walks.
inline Elem lca(const IntForest& uf, Elem x, Elem y) {
  const auto px = awalk_verts_from_rep(uf, x);
  const auto py = awalk_verts_from_rep(uf, y);
  if (px.front() != py.front()) {
    throw precondition_error("lca of elements in different classes");
  }
  const auto [ix, iy] = std::mismatch(px.begin(), px.end(), py.begin(), py.end());
  return *(ix - 1);
}

namespace detail {

struct NewestEdge {
  UnionIdx index;
  Elem child;  // the annotated vertex, lower endpoint of the edge
};

/// Newest annotated edge on the path from ancestor down to x.
inline std::optional<NewestEdge> newest_edge(const IntForest& uf,
                                             std::span<const OptIdx> au,
                                             Elem ancestor, Elem x) {
  std::optional<NewestEdge> best;
  std::size_t steps = 0;
  while (x != ancestor) {
    if (uf.is_root(x) || ++steps > uf.size()) {
      throw precondition_error("first argument is not an ancestor");
    }
    const OptIdx here = au[x];
    if (!here) throw corruption_error("non-root vertex without annotation");
    if (!best || *here > best->index) best = NewestEdge{*here, x};
    x = uf.parent_of(x);
  }
  return best;
}

/// Whether v lies in the subtree hanging below vertex top.
inline bool in_subtree(const IntForest& uf, Elem top, Elem v) {
  std::size_t steps = 0;
  while (v != top) {
    if (uf.is_root(v)) return false;
    if (++steps > uf.size()) throw corruption_error("cycle in forest");
    v = uf.parent_of(v);
  }
  return true;
}

}  // namespace detail

/// Max annotation strictly below y on the path y -> x; nullopt when y == x.
inline OptIdx find_newest_on_path(const IntForest& uf,
                                  std::span<const OptIdx> au, Elem y, Elem x) {
  const auto e = detail::newest_edge(uf, au, y, x);
  return e ? OptIdx{e->index} : std::nullopt;
}

/// Explains x = y from the annotated forest. Both elements must be in range
/// and in the same class.
///
/// The annotated vertex of an edge is the root that was attached, and its
/// subtree is frozen from then on. Which endpoint of the log entry lies in it
/// decides whether the union is used forwards or under sym; with raw unions
/// that is always the first component.
inline EqProof explain_annotated(const AnnotatedForest& af, Elem x, Elem y) {
  const IntForest& uf = af.forest;
  if (x >= uf.size()) throw range_error(x, uf.size());
  if (y >= uf.size()) throw range_error(y, uf.size());

  struct Task {
    bool combine;
    Elem x;  // union index when combining
    Elem y;
    bool forward;
  };
  EqProof proof;
  std::vector<EqProof::node_id> values;
  std::vector<Task> tasks{{false, x, y, false}};
  std::size_t fuel = 2 * af.log.size() + 2;

  while (!tasks.empty()) {
    const Task t = tasks.back();
    tasks.pop_back();
    if (t.combine) {
      const auto rhs = values.back();
      values.pop_back();
      const auto lhs = values.back();
      values.pop_back();
      auto mid = proof.add_assm(t.x);
      if (!t.forward) mid = proof.add_sym(mid);
      values.push_back(proof.add_chain(lhs, mid, rhs));
      continue;
    }
    if (fuel == 0) {
      ++fuel_exhaustion_count();
      throw fuel_exhausted("explain exceeded 2*|log|+2 steps");
    }
    --fuel;
    if (t.x == t.y) {
      values.push_back(proof.add_refl(t.x));
      continue;
    }
    const Elem top = lca(uf, t.x, t.y);
    const auto newest_x = detail::newest_edge(uf, af.au, top, t.x);
    const auto newest_y = detail::newest_edge(uf, af.au, top, t.y);
    const OptIdx ix = newest_x ? OptIdx{newest_x->index} : std::nullopt;
    const OptIdx iy = newest_y ? OptIdx{newest_y->index} : std::nullopt;

    // Pick the newest edge on the path and find which endpoint of its union
    // lies on t.x's side of that edge.
    UnionIdx idx;
    bool x_side_is_first;
    if (iy <= ix) {
      idx = newest_x->index;
      const Elem a = af.log[idx].first;
      x_side_is_first = detail::in_subtree(uf, newest_x->child, a);
    } else {
      idx = newest_y->index;
      const Elem a = af.log[idx].first;
      x_side_is_first = !detail::in_subtree(uf, newest_y->child, a);
    }
    const auto [a, b] = af.log[idx];
    if (x_side_is_first) {
      tasks.push_back({true, idx, 0, true});
      tasks.push_back({false, b, t.y, false});
      tasks.push_back({false, t.x, a, false});
    } else {
      tasks.push_back({true, idx, 0, false});
      tasks.push_back({false, a, t.y, false});
      tasks.push_back({false, t.x, b, false});
    }
  }
  return proof;
}

/// Efficient explain over a functional state (annotations recomputed).
inline EqProof explain_fast(const UfeState& st, Elem x, Elem y) {
  const auto au = assoc_unions(st);
  return explain_annotated({st.forest(), au, st.unions()}, x, y);
}

}  // namespace ufe
