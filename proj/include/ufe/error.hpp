#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ufe {

/// Element argument outside 0..n-1.
class range_error : public std::out_of_range {
 public:
  range_error(std::size_t elem, std::size_t n)
      : std::out_of_range("element " + std::to_string(elem) +
                          " out of range for " + std::to_string(n) +
                          " elements"),
        elem_(elem),
        n_(n) {}

  std::size_t elem() const noexcept { return elem_; }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t elem_;
  std::size_t n_;
};

/// A forest invariant was found broken (cycle, bad pointer, bad size).
class corruption_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An operation was called outside its documented precondition.
class precondition_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The explain recursion used more steps than the log permits.
class fuel_exhausted : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ufe
