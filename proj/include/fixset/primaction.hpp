#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "fixset/cycle_types.hpp"
#include "fixset/montecarlo.hpp"
#include "fixset/permutation.hpp"
#include "fixset/rng.hpp"

namespace fixset {

// Default ceiling on the number of points an exhaustive orbit/fixed-point
// sweep may touch.
inline constexpr std::uint64_t kDefaultPointCap = 10'000'000;

// Element (pi_1,...,pi_r; sigma) of the wreath product S_m wr S_r.  The base
// permutations act coordinate-wise on {1,...,m}^r (or on r-tuples of
// k-subsets) after sigma permutes the coordinates.
class WreathElement {
 public:
  WreathElement(std::uint32_t m, std::vector<Permutation> base, Permutation top);

  static WreathElement identity(std::uint32_t m, std::uint32_t r);

  std::uint32_t m() const { return m_; }
  std::uint32_t r() const { return r_; }
  const std::vector<Permutation>& base() const { return base_; }
  const Permutation& top() const { return top_; }

  bool is_identity() const;

 private:
  std::uint32_t m_;
  std::uint32_t r_;
  std::vector<Permutation> base_;
  Permutation top_;
};

// Semidirect-product multiplication: (g*h).top = g.top o h.top and
// (g*h).base[w] = g.base[w] o h.base[g.top^{-1}(w)], so that
// wreath_apply(g*h, x) == wreath_apply(g, wreath_apply(h, x)).
WreathElement wreath_multiply(const WreathElement& g, const WreathElement& h);

// Product action on {1,...,m}^r: output coordinate w is
// base[w](x[top^{-1}(w)]).  Coordinates are 1-based values in {1,...,m}.
std::vector<std::uint32_t> wreath_apply(const WreathElement& g,
                                        const std::vector<std::uint32_t>& x);

// The same action on r-tuples of k-subsets of {1,...,m}.  Each subset is a
// strictly increasing list of 1-based points; all subsets must share one size.
std::vector<std::vector<std::uint32_t>> wreath_apply_ksets(
    const WreathElement& g, const std::vector<std::vector<std::uint32_t>>& x);

// Number of k-subsets of {1,...,m} fixed setwise by p, i.e. the coefficient
// of z^k in the product of (1 + z^len) over the cycles of p.
mpz_class fixed_ksets(const Permutation& p, std::uint32_t k);

enum class FixedPointMode {
  kAuto,        // formula when top is the identity, otherwise exhaustive
  kFormula,     // product of per-coordinate fixed k-set counts (top == id only)
  kExhaustive,  // direct sweep over all binomial(m,k)^r points
};

// Number of points of Delta^r fixed by g, where Delta is the set of
// k-subsets of {1,...,m}.  Exhaustive mode requires binomial(m,k)^r <= cap.
mpz_class wreath_fixed_points(const WreathElement& g, std::uint32_t k,
                              FixedPointMode mode = FixedPointMode::kAuto,
                              std::uint64_t point_cap = kDefaultPointCap);

// Minimal degree of S_m wr S_r in its product action on k-subset tuples:
// binomial(m,k)^r - (binomial(m-2,k) + binomial(m-2,k-2)) * binomial(m,k)^{r-1}.
// The equal closed form 2k(m-k)/(m(m-1)) * binomial(m,k)^r is computed as
// well and both are checked against each other.  Requires m >= 5 and
// 1 <= k <= m-1.
mpz_class minimal_degree_product_action(std::uint32_t m, std::uint32_t k,
                                        std::uint32_t r);

// Number of cycles of the action induced by p on k-subsets of {1,...,m},
// counted by explicit orbit traversal over combinadically ranked subsets.
// Requires binomial(m,k) <= cap.
std::uint64_t kset_cycle_count(const Permutation& p, std::uint32_t k,
                               std::uint64_t point_cap = kDefaultPointCap);

// Number of cycles of g acting on {1,...,m}^r, counted by orbit traversal
// over mixed-radix ranked tuples.  Requires m^r <= cap.
std::uint64_t wreath_cycle_count(const WreathElement& g,
                                 std::uint64_t point_cap = kDefaultPointCap);

// Minimum number of points moved by a nontrivial power of p, computed from
// the cycle type alone: a j-cycle contributes j fixed points to p^t exactly
// when j divides t, and the minimum over valid t is attained at t = ord/q
// for a prime q dividing ord.  The identity is rejected.
std::uint64_t minimal_degree_cyclic(const Permutation& p);
std::uint64_t minimal_degree_cyclic(const CycleType& type);

// Empirical probability that a uniform permutation of degree n is nontrivial
// and every nontrivial power of it moves at least n^alpha points.
Estimate mc_minimal_degree(std::uint32_t n, double alpha, std::uint64_t trials,
                           Rng& rng, int threads = 0);

}  // namespace fixset
