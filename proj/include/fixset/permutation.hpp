#pragma once

#include <cstdint>
#include <vector>

#include "fixset/errors.hpp"

namespace fixset {

// A permutation of {1,...,n}, stored as its one-line image table:
// images()[x-1] is the image of x. Immutable after construction.
class Permutation {
 public:
  // `images` must be a bijection of {1,...,n} where n = images.size().
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::uint32_t n);

  // Build from disjoint cycles given with 1-based points, e.g.
  // from_cycles(9, {{1,4},{2,5},{3,6},{7,8,9}}). Points not mentioned are
  // fixed. Cycles must be disjoint and within range.
  static Permutation from_cycles(
      std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& cycles);

  std::uint32_t degree() const { return static_cast<std::uint32_t>(images_.size()); }

  // Image of x, 1 <= x <= degree().
  std::uint32_t apply(std::uint32_t x) const {
    if (x == 0 || x > images_.size())
      throw DomainError("Permutation::apply: point out of range");
    return images_[x - 1];
  }

  const std::vector<std::uint32_t>& images() const { return images_; }

  // Composition acting as functions: (this * other)(x) = this(other(x)).
  Permutation compose(const Permutation& other) const;

  Permutation inverse() const;

  bool is_identity() const;

  // Disjoint cycles including fixed points; each cycle starts at its least
  // point, cycles ordered by least point. Deterministic.
  std::vector<std::vector<std::uint32_t>> cycles() const;

  // Multiset of cycle lengths (including 1-cycles), sorted increasing.
  std::vector<std::uint32_t> cycle_lengths() const;

  bool operator==(const Permutation& other) const { return images_ == other.images_; }
  bool operator!=(const Permutation& other) const { return images_ != other.images_; }

 private:
  std::vector<std::uint32_t> images_;
};

}  // namespace fixset
