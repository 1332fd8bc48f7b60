#include "fixset/cycle_types.hpp"

#include <algorithm>

namespace fixset {

IntegerPartition::IntegerPartition(std::vector<std::uint32_t> parts)
    : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0)
      throw DomainError("IntegerPartition: parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw DomainError("IntegerPartition: parts must be nonincreasing");
  }
}

std::uint64_t IntegerPartition::total() const {
  std::uint64_t t = 0;
  for (std::uint32_t p : parts_) t += p;
  return t;
}

std::string IntegerPartition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts_[i]);
  }
  s += ")";
  return s;
}

std::uint64_t PartialCycleType::weighted_sum() const {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < counts_.size(); ++j)
    s += static_cast<std::uint64_t>(j + 1) * counts_[j];
  return s;
}

std::uint64_t PartialCycleType::cycle_count() const {
  std::uint64_t s = 0;
  for (std::uint32_t c : counts_) s += c;
  return s;
}

CycleType::CycleType(std::vector<std::uint32_t> counts)
    : counts_(std::move(counts)) {
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < counts_.size(); ++j)
    total += static_cast<std::uint64_t>(j + 1) * counts_[j];
  if (total == 0) throw DomainError("CycleType: degree must be at least 1");
  for (std::size_t j = total; j < counts_.size(); ++j)
    if (counts_[j] != 0)
      throw DomainError("CycleType: count at length exceeding the degree");
  n_ = static_cast<std::uint32_t>(total);
  counts_.resize(n_, 0);
}

CycleType CycleType::from_partition(const IntegerPartition& p) {
  if (p.size() == 0) throw DomainError("CycleType: empty partition");
  std::vector<std::uint32_t> counts(p.parts().front(), 0);
  for (std::uint32_t part : p.parts()) ++counts[part - 1];
  return CycleType(std::move(counts));
}

std::uint64_t CycleType::cycle_count() const {
  std::uint64_t s = 0;
  for (std::uint32_t c : counts_) s += c;
  return s;
}

IntegerPartition CycleType::to_partition() const {
  std::vector<std::uint32_t> parts;
  for (std::uint32_t j = n_; j >= 1; --j)
    for (std::uint32_t i = 0; i < count(j); ++i) parts.push_back(j);
  return IntegerPartition(std::move(parts));
}

TypeStats stats(const PartialCycleType& c) {
  TypeStats out;
  out.S = c.weighted_sum();
  for (std::uint32_t j = 1; j <= c.support(); ++j) {
    if (c.count(j) > 0) {
      out.c_plus = j;
      if (!out.c_minus) out.c_minus = j;
    }
  }
  return out;
}

CycleType cycle_type(const Permutation& p) {
  std::vector<std::uint32_t> counts(p.degree(), 0);
  for (std::uint32_t len : p.cycle_lengths()) ++counts[len - 1];
  return CycleType(std::move(counts));
}

}  // namespace fixset
