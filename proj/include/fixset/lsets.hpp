#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <vector>

#include "fixset/cycle_types.hpp"
#include "fixset/montecarlo.hpp"
#include "fixset/rng.hpp"

namespace fixset {

// Default limit on the number of tuples a set construction may hold.
inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000;

// Default limit on the number of elements a per-element distribution set
// construction accepts.
inline constexpr std::uint32_t kDefaultStarCap = 12;

// The set of (m-1)-projections of all m-tuples of class totals realizable by
// distributing cycles among m classes. Each stored tuple lists the totals of
// classes 1..m-1; the m-th total is `total` minus their sum. Set semantics,
// iteration order lexicographic (std::set), deterministic.
struct TupleSet {
  std::uint32_t m = 2;
  std::uint64_t total = 0;
  std::set<std::vector<std::uint64_t>> tuples;

  std::uint64_t size() const { return tuples.size(); }
  bool contains(const std::vector<std::uint64_t>& t) const {
    return tuples.count(t) > 0;
  }
};

// An unordered multiset of r positive integers (e.g. a list of cycle
// lengths, with repetitions).
struct LengthMultiset {
  std::vector<std::uint32_t> a;

  std::uint32_t r() const { return static_cast<std::uint32_t>(a.size()); }
};

// Convert a length multiset to its multiplicity vector (counts per length).
PartialCycleType multiplicity_vector(const LengthMultiset& a);

// The realizable-totals set for cycle multiplicities c and m classes, built
// by dynamic programming over lengths j in increasing order: the current set
// is convolved with every composition of c_j into m parts (projected onto the
// first m-1 coordinates). Throws CapError when an intermediate set would
// exceed `tuple_budget`.
TupleSet lset(const PartialCycleType& c, std::uint32_t m,
              std::uint64_t tuple_budget = kDefaultTupleBudget);

// |lset(c, m)| as a big integer.
mpz_class lset_size(const PartialCycleType& c, std::uint32_t m,
                    std::uint64_t tuple_budget = kDefaultTupleBudget);

// The same set built from an explicit element list: each element a_t is
// assigned to one of m classes, one element at a time (an independent
// construction used to cross-check lset). Throws CapError when r exceeds
// `star_cap` or the set exceeds `tuple_budget`.
TupleSet lset_star(const LengthMultiset& a, std::uint32_t m,
                   std::uint32_t star_cap = kDefaultStarCap,
                   std::uint64_t tuple_budget = kDefaultTupleBudget);

// Closed-form upper bound for |lset_star(a, m)|:
// min over 0 <= j <= r of (1 + a~_1 + ... + a~_j)^(m-1) * m^(r-j),
// where a~ is the increasing rearrangement of a.
mpz_class g_bound(const LengthMultiset& a, std::uint32_t m);

// Monte Carlo estimate of E |lset(X_k, m)| where X_k has independent
// Poisson(1/j) counts for j <= k. Draws whose set would exceed the budget are
// retried at progressively raised budget tiers (exact size, never dropped,
// never approximated); CapError only if the top tier is still exceeded.
Estimate expected_lset_size(std::uint32_t k, std::uint32_t m,
                            std::int64_t trials, const Rng& rng,
                            unsigned threads = 1,
                            std::uint64_t tuple_budget = kDefaultTupleBudget);

}  // namespace fixset
