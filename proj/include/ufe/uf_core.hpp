#pragma once

// Union-find forests over the elements 0..n-1.
//
// basic_int_forest stores the forest as a single array of signed integers: a
// negative cell marks a root and holds the negated class size, a non-negative
// cell is a parent pointer. It never compresses paths, so the tree shape is a
// pure function of the union sequence; the explain algorithms depend on that.
//
// compressed_forest is the plain parent-array variant with full path
// compression, used as a fast twin for find queries.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufe/error.hpp"

namespace ufe {

using Elem = std::size_t;

template <std::signed_integral Cell>
class basic_int_forest {
 public:
  using cell_type = Cell;

  basic_int_forest() = default;

  /// Every element is its own singleton class.
  explicit basic_int_forest(std::size_t n) {
    if (n > static_cast<std::size_t>(std::numeric_limits<Cell>::max())) {
      throw std::length_error("forest size exceeds cell range");
    }
    cells_.assign(n, Cell{-1});
  }

  /// Adopts a raw cell array; throws corruption_error unless it is a valid
  /// forest with consistent root sizes.
  static basic_int_forest from_cells(std::vector<Cell> cells) {
    basic_int_forest f;
    f.cells_ = std::move(cells);
    f.check_invariants();
    return f;
  }

  std::size_t size() const noexcept { return cells_.size(); }
  std::span<const Cell> cells() const noexcept { return cells_; }

  bool is_root(Elem x) const {
    check_elem(x);
    return cells_[x] < 0;
  }

  Elem parent_of(Elem x) const {
    check_elem(x);
    return cells_[x] < 0 ? x : static_cast<Elem>(cells_[x]);
  }

  Elem rep_of(Elem x) const {
    check_elem(x);
    std::size_t steps = 0;
    while (cells_[x] >= 0) {
      if (++steps > cells_.size()) {
        throw corruption_error("parent pointers form a cycle");
      }
      x = static_cast<Elem>(cells_[x]);
    }
    return x;
  }

  std::size_t class_size(Elem x) const {
    return static_cast<std::size_t>(-cells_[rep_of(x)]);
  }

  /// Points rep_of(x) at rep_of(y). Returns the root that was attached, or
  /// nullopt when x and y were already in the same class.
  std::optional<Elem> unite(Elem x, Elem y) {
    const Elem rx = rep_of(x);
    const Elem ry = rep_of(y);
    if (rx == ry) return std::nullopt;
    cells_[ry] += cells_[rx];
    cells_[rx] = static_cast<Cell>(ry);
    return rx;
  }

  /// Union by size. Ties take the else branch: y's root goes under x's root.
  std::optional<Elem> unite_by_size(Elem x, Elem y) {
    const Elem rx = rep_of(x);
    const Elem ry = rep_of(y);
    if (rx == ry) return std::nullopt;
    if (-cells_[rx] < -cells_[ry]) return unite(x, y);
    return unite(y, x);
  }

  /// All elements sharing x's representative, ascending. Linear scan.
  std::vector<Elem> eq_class(Elem x) const {
    const Elem r = rep_of(x);
    std::vector<Elem> out;
    for (Elem y = 0; y < cells_.size(); ++y) {
      if (rep_of(y) == r) out.push_back(y);
    }
    return out;
  }

  void check_invariants() const {
    const std::size_t n = cells_.size();
    std::vector<std::size_t> counted(n, 0);
    for (Elem i = 0; i < n; ++i) {
      if (cells_[i] >= 0 && static_cast<std::size_t>(cells_[i]) >= n) {
        throw corruption_error("parent pointer out of range at " +
                               std::to_string(i));
      }
    }
    for (Elem i = 0; i < n; ++i) ++counted[rep_of(i)];
    std::size_t total = 0;
    for (Elem i = 0; i < n; ++i) {
      if (cells_[i] >= 0) continue;
      const auto sz = static_cast<std::size_t>(-cells_[i]);
      if (sz != counted[i]) {
        throw corruption_error("root " + std::to_string(i) + " records size " +
                               std::to_string(sz) + " but has " +
                               std::to_string(counted[i]) + " members");
      }
      total += sz;
    }
    if (total != n) throw corruption_error("root sizes do not sum to n");
  }

  friend bool operator==(const basic_int_forest&,
                         const basic_int_forest&) = default;

 private:
  void check_elem(Elem x) const {
    if (x >= cells_.size()) throw range_error(x, cells_.size());
  }

  std::vector<Cell> cells_;
};

using IntForest = basic_int_forest<std::int64_t>;

class compressed_forest {
 public:
  compressed_forest() = default;

  explicit compressed_forest(std::size_t n) : parents_(n) {
    for (Elem i = 0; i < n; ++i) parents_[i] = i;
  }

  std::size_t size() const noexcept { return parents_.size(); }
  std::span<const Elem> parents() const noexcept { return parents_; }

  /// Root of x; every node on the walked path is repointed at the root.
  Elem find_compress(Elem x) {
    check_elem(x);
    Elem root = x;
    std::size_t steps = 0;
    while (parents_[root] != root) {
      if (++steps > parents_.size()) {
        throw corruption_error("parent pointers form a cycle");
      }
      root = parents_[root];
    }
    while (parents_[x] != root) {
      const Elem next = parents_[x];
      parents_[x] = root;
      x = next;
    }
    return root;
  }

  /// Plain union: find(x) goes under find(y). False when already joined.
  bool unite(Elem x, Elem y) {
    const Elem rx = find_compress(x);
    const Elem ry = find_compress(y);
    if (rx == ry) return false;
    parents_[rx] = ry;
    return true;
  }

  /// Test hook: adopt a parent array as-is (self-loops mark roots).
  static compressed_forest from_parents(std::vector<Elem> parents) {
    compressed_forest f;
    for (Elem p : parents) {
      if (p >= parents.size()) throw range_error(p, parents.size());
    }
    f.parents_ = std::move(parents);
    return f;
  }

 private:
  void check_elem(Elem x) const {
    if (x >= parents_.size()) throw range_error(x, parents_.size());
  }

  std::vector<Elem> parents_;
};

/// Labels every element with the smallest member of its class, so two
/// structures induce the same partition iff their label vectors are equal.
template <class RepFn>
std::vector<Elem> partition_labels(std::size_t n, RepFn&& rep) {
  std::vector<Elem> smallest(n, n);
  std::vector<Elem> label(n);
  for (Elem x = 0; x < n; ++x) {
    const Elem r = rep(x);
    if (smallest[r] == n) smallest[r] = x;
    label[x] = smallest[r];
  }
  return label;
}

}  // namespace ufe
