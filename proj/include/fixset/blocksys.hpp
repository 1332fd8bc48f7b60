#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "fixset/cycle_types.hpp"
#include "fixset/fixedsets.hpp"
#include "fixset/montecarlo.hpp"
#include "fixset/rational.hpp"
#include "fixset/rng.hpp"

namespace fixset {

// A block-system query: partitions of {1..n} into nu blocks of size n/nu.
struct BlockSystemQuery {
  std::uint32_t n = 0;
  std::uint32_t nu = 0;

  BlockSystemQuery(std::uint32_t n_in, std::uint32_t nu_in);

  std::uint32_t block_size() const { return n / nu; }
};

// The decay exponent governing the all-ones split probability:
// delta(m) = integral of log t over [1, (m-1)/log m], in closed form
// T log T - T + 1 with T = (m-1)/log m. Requires m >= 2.
double delta(std::uint32_t m);

// The same integral via adaptive Simpson quadrature (cross-validation route).
double delta_integral(std::uint32_t m);

// One candidate split shape of nu with its probability-decay exponent.
struct ExponentCandidate {
  IntegerPartition partition;
  double exponent = 0.0;
};

// All candidate shapes (d, 1, ..., 1) for d = 1..nu with their exponents, and
// the dominant (minimal-exponent) one. `ambiguous` reports a tie within the
// 1e-9 guard rather than resolving it arbitrarily.
struct ExponentReport {
  std::uint32_t nu = 0;
  std::vector<ExponentCandidate> candidates;
  IntegerPartition dominant;
  double dominant_exponent = 0.0;
  bool ambiguous = false;
};

// Exponent table: delta(nu) for the all-ones shape; 1 - 1/d + delta(nu-d) for
// (d,1,...,1) with 2 <= d <= nu-2; 1 - 1/(nu-1) for (nu-1,1); 1 - 1/nu for
// (nu). Valid for 2 <= nu <= 64.
ExponentReport dominant_partition(std::uint32_t nu);

// Exact probability that a uniform random permutation of n points preserves
// some partition into nu blocks of size n/nu: a cycle type qualifies iff some
// partition (d_i) of nu makes the fixed-set query ((d_i*n/nu)_i, (d_i)_i)
// feasible.
ExactProbability exact_I(const BlockSystemQuery& q, const ExactOptions& opt = {});

// Oracle for exact_I: enumerate every block partition, enumerate each
// partition's stabilizer, and take the union over partitions. n <= 9.
ExactProbability brute_force_I(const BlockSystemQuery& q);

// Monte Carlo counterpart of exact_I.
Estimate mc_I(const BlockSystemQuery& q, std::int64_t trials, const Rng& rng,
              unsigned threads = 1,
              std::uint32_t enumeration_cap = kDefaultEnumerationCap);

// Coefficients c_0..c_M of exp(sum_k z^k / k^2) via the recurrence
// c_m = (1/m) sum_{k=1}^m c_{m-k} / k, in doubles. O(M^2).
std::vector<double> coeff_exp_inv_square(std::uint32_t M);

// The same coefficients as exact rationals (for small M).
std::vector<mpq_class> coeff_exp_inv_square_exact(std::uint32_t M);

// Exact coefficients 0..degree of the series f with log-coefficients
// l_k = (1/(s! k)) * prod_{t=1}^{s-1} (1/k + t), exponentiated by the
// power-series exponential recurrence. degree <= 200.
std::vector<mpq_class> f_series_exact(std::uint32_t s, std::uint32_t degree);

// Exact coefficients 0..degree of g = (1-z)^(-1/s) * exp(sum z^k/k^2), whose
// coefficients dominate those of f. degree <= 200.
std::vector<mpq_class> g_series_exact(std::uint32_t s, std::uint32_t degree);

// Upper bounds for the block-system probability at s = n/nu >= 2: the
// coefficient of z^nu in f (exact rationals to degree min(nu, 200), then
// doubles with compensated summation) and in the dominating series g.
struct SeriesBound {
  double f_coeff = 0.0;
  double g_coeff = 0.0;
};

SeriesBound largenu_bound(const BlockSystemQuery& q);

// The piecewise theoretical order of the block-system probability (no
// implied constant): n^(-delta(nu)) (log n)^(-3/2) for nu <= 4;
// n^(-1+1/(nu-1)) for 5 <= nu < ceil(log n); n^(-1) for
// ceil(log n) <= nu < ceil(n/log n); n^(-1+nu/n) above (left-closed seams).
double theory_I_order(const BlockSystemQuery& q);

}  // namespace fixset
