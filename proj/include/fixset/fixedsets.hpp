#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fixset/cycle_types.hpp"
#include "fixset/lsets.hpp"
#include "fixset/montecarlo.hpp"
#include "fixset/permcore.hpp"
#include "fixset/rational.hpp"
#include "fixset/rng.hpp"

namespace fixset {

// A fixed-set event: part sizes k_1..k_m summing to n, with divisibility
// constraints d_1..d_m (class i accepts only cycle lengths divisible by d_i).
struct KDVectors {
  std::vector<std::uint32_t> k;
  std::vector<std::uint32_t> d;
  std::uint32_t n = 0;

  // Validates: equal lengths, m >= 1, k_i >= 1, d_i >= 1, d_i | k_i,
  // sum k_i = n.
  KDVectors(std::vector<std::uint32_t> k_in, std::vector<std::uint32_t> d_in);

  std::uint32_t m() const { return static_cast<std::uint32_t>(k.size()); }

  // Key with (k_i, d_i) pairs sorted — queries differing only by a joint
  // permutation of the pairs share cache entries.
  std::string canonical_key() const;
};

// True iff the multiset of cycles of c can be split so that class i receives
// only lengths divisible by d_i with class-i lengths summing to k_i exactly.
// Multidimensional subset-sum DP over cycle lengths in decreasing order;
// state = set of residual (k_1..k_{m-1}) vectors (class m implicit).
bool feasible(const CycleType& c, const KDVectors& kd);

// Memoized feasible(), shared between exact summations that re-query the same
// (type, constraint) pairs. Thread-safe (single mutex; inserts idempotent).
class FeasibilityCache {
 public:
  bool feasible(const CycleType& c, const KDVectors& kd);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, bool> map_;
};

// Options for exact enumeration-based computations.
struct ExactOptions {
  std::uint32_t enumeration_cap = kDefaultEnumerationCap;
  unsigned threads = 1;
  FeasibilityCache* cache = nullptr;  // optional shared memo
};

// Exact probability that a uniform random permutation of n points admits the
// fixed-set decomposition described by kd: the sum of conjugacy-class
// probabilities over all feasible cycle types.
ExactProbability exact_i(const KDVectors& kd, const ExactOptions& opt = {});

// Oracle for exact_i: enumerate all n! permutations, decide each one by
// exhaustive assignment of its actual cycles to classes. n <= 9.
ExactProbability brute_force_i(const KDVectors& kd);

// Monte Carlo counterpart of exact_i: samples uniform permutations and
// applies the per-cycle-type feasibility predicate.
Estimate mc_i(const KDVectors& kd, std::int64_t trials, const Rng& rng,
              unsigned threads = 1,
              std::uint32_t enumeration_cap = kDefaultEnumerationCap);

// Number of permutations of n points all of whose cycle lengths are divisible
// by d, via the product recurrence
// f(n) = (n-1)...(n-d+2) * (n-d+1)^2 * f(n-d), f(0) = 1
// (and f(n) = 0 for 0 < n < d since no cycle fits).
mpz_class f_divisible(std::uint64_t n, std::uint32_t d);

// Product upper bound prod_i k_i^(-1 + 1/d_i) for comparison harnesses.
double crude_bound(const KDVectors& kd);

// One row of the local-global comparison table at m = 2, k = n/2.
struct LocalGlobalRow {
  std::uint32_t n = 0;
  ExactProbability exact;     // exact_i(n, (n/2, n/2), (1,1))
  double lset_over_k = 0.0;   // MC estimate of E|lset(X_{n/2}, 2)| / (n/2)
  double lset_stderr_over_k = 0.0;
  double ratio = 0.0;         // exact / lset_over_k
};

// For each even n in n_list: exact probability of a half/half split vs. the
// Poisson-model estimate; the ratio column is reported, not asserted.
std::vector<LocalGlobalRow> local_global_report(
    const std::vector<std::uint32_t>& n_list, std::int64_t trials,
    const Rng& rng, const ExactOptions& opt = {});

}  // namespace fixset
