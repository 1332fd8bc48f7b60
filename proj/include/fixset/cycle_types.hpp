#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixset/errors.hpp"
#include "fixset/permutation.hpp"

namespace fixset {

// A partition of a positive integer: nonincreasing positive parts.
class IntegerPartition {
 public:
  IntegerPartition() = default;
  explicit IntegerPartition(std::vector<std::uint32_t> parts);

  const std::vector<std::uint32_t>& parts() const { return parts_; }
  std::uint64_t total() const;
  std::size_t size() const { return parts_.size(); }

  // "(4,1)" style rendering.
  std::string to_string() const;

  bool operator==(const IntegerPartition& o) const { return parts_ == o.parts_; }
  bool operator!=(const IntegerPartition& o) const { return parts_ != o.parts_; }

 private:
  std::vector<std::uint32_t> parts_;
};

// Cycle-length multiplicities c_1..c_k with no constraint on the weighted sum
// S(c) = sum_j j*c_j. The support bound k is the length of the counts array.
class PartialCycleType {
 public:
  PartialCycleType() = default;
  explicit PartialCycleType(std::vector<std::uint32_t> counts)
      : counts_(std::move(counts)) {}

  std::uint32_t support() const { return static_cast<std::uint32_t>(counts_.size()); }

  // Number of j-cycles; zero beyond the stored support.
  std::uint32_t count(std::uint32_t j) const {
    if (j == 0) throw DomainError("cycle length 0 is meaningless");
    return j <= counts_.size() ? counts_[j - 1] : 0;
  }

  const std::vector<std::uint32_t>& counts() const { return counts_; }

  // S(c) = sum_j j*c_j.
  std::uint64_t weighted_sum() const;

  // Total number of cycles, sum_j c_j.
  std::uint64_t cycle_count() const;

  bool operator==(const PartialCycleType& o) const { return counts_ == o.counts_; }

 private:
  std::vector<std::uint32_t> counts_;
};

// The cycle type of a permutation of n points: counts c_1..c_n with
// sum_j j*c_j = n exactly (validated). Stored padded to length n.
class CycleType {
 public:
  // n is inferred as sum_j j*counts[j-1]; counts may be given shorter or
  // longer than n as long as trailing entries are zero.
  explicit CycleType(std::vector<std::uint32_t> counts);

  static CycleType from_partition(const IntegerPartition& p);

  std::uint32_t n() const { return n_; }
  std::uint32_t count(std::uint32_t j) const {
    if (j == 0) throw DomainError("cycle length 0 is meaningless");
    return j <= counts_.size() ? counts_[j - 1] : 0;
  }
  const std::vector<std::uint32_t>& counts() const { return counts_; }
  std::uint64_t cycle_count() const;

  // The multiset of cycle lengths as a partition of n.
  IntegerPartition to_partition() const;

  PartialCycleType to_partial() const { return PartialCycleType(counts_); }

  bool operator==(const CycleType& o) const { return counts_ == o.counts_; }
  bool operator!=(const CycleType& o) const { return counts_ != o.counts_; }

 private:
  std::vector<std::uint32_t> counts_;
  std::uint32_t n_ = 0;
};

// Summary statistics of a partial cycle type: the weighted sum S, the largest
// cycle length with positive count (0 if none), and the smallest such length
// (empty optional = "infinity", when no count is positive).
struct TypeStats {
  std::uint64_t S = 0;
  std::uint32_t c_plus = 0;
  std::optional<std::uint32_t> c_minus;
};

TypeStats stats(const PartialCycleType& c);

// Cycle type of a permutation.
CycleType cycle_type(const Permutation& p);

}  // namespace fixset
