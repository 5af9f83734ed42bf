#pragma once

// Array-backed union-find with explain.
//
// Four parts kept in lockstep:
//   forest  signed-size forest, union by size, never compressed
//   au      per-element annotation: log index of the union that attached it
//   log     growable array of unions in the order they were performed
//   twin    path-compressed copy of the forest answering find queries

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ufe/certificates.hpp"
#include "ufe/error.hpp"
#include "ufe/uf_core.hpp"
#include "ufe/ufe_fast.hpp"
#include "ufe/ufe_log.hpp"

namespace ufe {

/// Growable contiguous array that doubles its capacity when full.
template <class T>
class DynArray {
 public:
  static constexpr std::size_t initial_capacity = 4;

  DynArray()
      : data_(std::make_unique<T[]>(initial_capacity)),
        capacity_(initial_capacity) {}

  DynArray(const DynArray& other)
      : data_(std::make_unique<T[]>(other.capacity_)),
        size_(other.size_),
        capacity_(other.capacity_) {
    std::copy(other.data_.get(), other.data_.get() + size_, data_.get());
  }
  DynArray& operator=(const DynArray& other) {
    if (this != &other) *this = DynArray(other);
    return *this;
  }
  DynArray(DynArray&& other) noexcept
      : data_(std::move(other.data_)),
        size_(std::exchange(other.size_, 0)),
        capacity_(std::exchange(other.capacity_, 0)),
        relocations_(other.relocations_) {}
  DynArray& operator=(DynArray&& other) noexcept {
    data_ = std::move(other.data_);
    size_ = std::exchange(other.size_, 0);
    capacity_ = std::exchange(other.capacity_, 0);
    relocations_ = other.relocations_;
    return *this;
  }

  void push_back(T value) {
    if (size_ == capacity_) grow();
    data_[size_++] = std::move(value);
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return size_ == 0; }

  const T& operator[](std::size_t i) const { return data_[i]; }
  std::span<const T> view() const noexcept { return {data_.get(), size_}; }
  const T* begin() const noexcept { return data_.get(); }
  const T* end() const noexcept { return data_.get() + size_; }

  /// Elements moved into a new buffer across all growths so far.
  std::uint64_t relocations() const noexcept { return relocations_; }

 private:
  void grow() {
    const std::size_t cap = std::max(capacity_ * 2, initial_capacity);
    auto fresh = std::make_unique<T[]>(cap);
    for (std::size_t i = 0; i < size_; ++i) fresh[i] = std::move(data_[i]);
    relocations_ += size_;
    data_ = std::move(fresh);
    capacity_ = cap;
  }

  std::unique_ptr<T[]> data_;
  std::size_t size_ = 0;
  std::size_t capacity_ = 0;
  std::uint64_t relocations_ = 0;
};

class Engine {
 public:
  Engine() : Engine(0) {}
  explicit Engine(std::size_t n) : n_(n), forest_(n), au_(n), twin_(n) {}

  std::size_t size() const noexcept { return n_; }

  /// Union by size. Returns false, changing nothing, when a and b are
  /// already in one class. The log keeps (a, b) in caller order.
  bool add_union(Elem a, Elem b) {
    check_elem(a);
    check_elem(b);
    if (twin_.find_compress(a) == twin_.find_compress(b)) return false;
    const auto attached = forest_.unite_by_size(a, b);
    if (!attached) throw corruption_error("twin and forest disagree");
    au_[*attached] = log_.size();
    log_.push_back({a, b});
    twin_.unite(a, b);
    return true;
  }

  Elem find(Elem x) {
    check_elem(x);
    return twin_.find_compress(x);
  }

  bool same_class(Elem x, Elem y) { return find(x) == find(y); }

  /// Certificate for x = y, or nullopt if they are not equivalent.
  /// Only the uncompressed forest is consulted.
  std::optional<EqProof> explain(Elem x, Elem y) const {
    if (x == y) return refl(x);
    if (x >= n_ || y >= n_) return std::nullopt;
    if (forest_.rep_of(x) != forest_.rep_of(y)) return std::nullopt;
    return explain_annotated({forest_, au_, log_.view()}, x, y);
  }

  /// The functional by-size state with the same log.
  UfeState snapshot() const {
    return UfeState::replay(n_, UnionPolicy::by_size,
                            UnionLog(log_.begin(), log_.end()));
  }

  const IntForest& forest() const noexcept { return forest_; }
  std::span<const OptIdx> assoc() const noexcept { return au_; }
  const DynArray<UnionPair>& log() const noexcept { return log_; }
  const compressed_forest& twin() const noexcept { return twin_; }

 private:
  void check_elem(Elem x) const {
    if (x >= n_) throw range_error(x, n_);
  }

  std::size_t n_;
  IntForest forest_;
  std::vector<OptIdx> au_;
  DynArray<UnionPair> log_;
  compressed_forest twin_;
};

}  // namespace ufe
