#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "fixset/cycle_types.hpp"
#include "fixset/permutation.hpp"
#include "fixset/rational.hpp"
#include "fixset/rng.hpp"

namespace fixset {

// Largest degree for which full cycle-type enumeration is allowed by default
// (partition counts grow superpolynomially; p(50) is ~2*10^5).
inline constexpr std::uint32_t kDefaultEnumerationCap = 50;

mpz_class factorial(std::uint64_t n);
mpz_class binomial(std::uint64_t n, std::uint64_t k);

// Streaming generator of the partitions of v in reverse-lexicographic order:
// (v), (v-1,1), ..., (1,...,1).
class PartitionGenerator {
 public:
  explicit PartitionGenerator(std::uint32_t v);
  // Writes the next partition into `out`; returns false when exhausted.
  bool next(IntegerPartition& out);

 private:
  std::vector<std::uint32_t> parts_;
  bool first_ = true;
  bool done_ = false;
};

// All partitions of v, reverse-lexicographic.
std::vector<IntegerPartition> partitions_of(std::uint32_t v);

// Probability that a uniform random permutation has cycle type c:
// prod_j 1 / (c_j! * j^(c_j)).
ExactProbability cycle_type_probability(const CycleType& c);

// Every cycle type of degree n paired with its conjugacy-class probability;
// reverse-lexicographic in the underlying partition; probabilities sum to
// exactly 1. Throws CapError when n > cap.
std::vector<std::pair<CycleType, ExactProbability>> enumerate_cycle_types(
    std::uint32_t n, std::uint32_t cap = kDefaultEnumerationCap);

// Uniform random permutation of {1..n} (Fisher-Yates over the seeded stream).
Permutation sample_uniform(std::uint32_t n, Rng& rng);

// Independent counts[j] ~ Poisson(1/j) for 1 <= j <= k: the local model of
// small-cycle counts of a uniform random permutation.
PartialCycleType sample_poisson_counts(std::uint32_t k, Rng& rng);

// Number of permutations of n_prime points all of whose cycle lengths exceed
// k, via the recurrence A(n',k) = sum_{j=k+1}^{n'} (n'-1)!/(n'-j)! A(n'-j,k),
// A(0,k) = 1.
mpz_class count_long_cycle_permutations(std::uint32_t n_prime, std::uint32_t k);

// Exact number of permutations of n points with exactly c_i cycles of length
// i for every i <= k (no constraint on longer cycles): binomial(n, S(c)) *
// S(c)!/(prod c_i! i^{c_i}) * A(n - S(c), k).
mpz_class count_prescribed_small_cycles(std::uint32_t n,
                                        const PartialCycleType& c,
                                        std::uint32_t k);

}  // namespace fixset
