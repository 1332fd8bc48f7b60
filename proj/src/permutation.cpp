#include "fixset/permutation.hpp"

#include <algorithm>
#include <numeric>

namespace fixset {

Permutation::Permutation(std::vector<std::uint32_t> images)
    : images_(std::move(images)) {
  const std::size_t n = images_.size();
  if (n == 0) throw DomainError("Permutation: degree must be at least 1");
  std::vector<bool> seen(n, false);
  for (std::uint32_t v : images_) {
    if (v == 0 || v > n || seen[v - 1])
      throw DomainError("Permutation: image table is not a bijection");
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(std::uint32_t n) {
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 1u);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(
    std::uint32_t n, const std::vector<std::vector<std::uint32_t>>& cycles) {
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 1u);
  std::vector<bool> used(n, false);
  for (const auto& cyc : cycles) {
    if (cyc.empty()) continue;
    for (std::uint32_t p : cyc) {
      if (p == 0 || p > n) throw DomainError("from_cycles: point out of range");
      if (used[p - 1]) throw DomainError("from_cycles: cycles not disjoint");
      used[p - 1] = true;
    }
    for (std::size_t i = 0; i < cyc.size(); ++i)
      images[cyc[i] - 1] = cyc[(i + 1) % cyc.size()];
  }
  return Permutation(std::move(images));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (degree() != other.degree())
    throw MismatchError("compose: degrees differ");
  std::vector<std::uint32_t> images(degree());
  for (std::uint32_t x = 0; x < degree(); ++x)
    images[x] = images_[other.images_[x] - 1];
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> images(degree());
  for (std::uint32_t x = 0; x < degree(); ++x) images[images_[x] - 1] = x + 1;
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
  for (std::uint32_t x = 0; x < degree(); ++x)
    if (images_[x] != x + 1) return false;
  return true;
}

std::vector<std::vector<std::uint32_t>> Permutation::cycles() const {
  std::vector<std::vector<std::uint32_t>> result;
  std::vector<bool> visited(degree(), false);
  for (std::uint32_t start = 1; start <= degree(); ++start) {
    if (visited[start - 1]) continue;
    std::vector<std::uint32_t> cyc;
    std::uint32_t x = start;
    do {
      visited[x - 1] = true;
      cyc.push_back(x);
      x = images_[x - 1];
    } while (x != start);
    result.push_back(std::move(cyc));
  }
  return result;
}

std::vector<std::uint32_t> Permutation::cycle_lengths() const {
  std::vector<std::uint32_t> lengths;
  for (const auto& cyc : cycles())
    lengths.push_back(static_cast<std::uint32_t>(cyc.size()));
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

}  // namespace fixset
