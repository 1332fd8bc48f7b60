#include "fixset/permcore.hpp"

#include <algorithm>
#include <numeric>

namespace fixset {

mpz_class factorial(std::uint64_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

PartitionGenerator::PartitionGenerator(std::uint32_t v) {
  if (v == 0) throw DomainError("partitions of 0 are not defined here");
  parts_ = {v};
}

bool PartitionGenerator::next(IntegerPartition& out) {
  if (done_) return false;
  if (first_) {
    first_ = false;
    out = IntegerPartition(parts_);
    return true;
  }
  // Find the rightmost part exceeding 1; decrement it and redistribute the
  // freed amount greedily. This steps to the immediate reverse-lex successor.
  std::size_t i = parts_.size();
  while (i > 0 && parts_[i - 1] == 1) --i;
  if (i == 0) {
    done_ = true;
    return false;
  }
  const std::uint32_t s = parts_[i - 1] - 1;
  std::uint64_t rest = 1 + (parts_.size() - i);  // freed 1 plus trailing ones
  parts_.resize(i);
  parts_[i - 1] = s;
  while (rest >= s) {
    parts_.push_back(s);
    rest -= s;
  }
  if (rest > 0) parts_.push_back(static_cast<std::uint32_t>(rest));
  out = IntegerPartition(parts_);
  return true;
}

std::vector<IntegerPartition> partitions_of(std::uint32_t v) {
  std::vector<IntegerPartition> all;
  PartitionGenerator gen(v);
  IntegerPartition p;
  while (gen.next(p)) all.push_back(p);
  return all;
}

ExactProbability cycle_type_probability(const CycleType& c) {
  mpz_class denom = 1;
  for (std::uint32_t j = 1; j <= c.n(); ++j) {
    const std::uint32_t cj = c.count(j);
    if (cj == 0) continue;
    mpz_class pow_j;
    mpz_ui_pow_ui(pow_j.get_mpz_t(), j, cj);
    denom *= factorial(cj) * pow_j;
  }
  return ExactProbability(mpq_class(mpz_class(1), denom));
}

std::vector<std::pair<CycleType, ExactProbability>> enumerate_cycle_types(
    std::uint32_t n, std::uint32_t cap) {
  if (n == 0) throw DomainError("enumerate_cycle_types: n must be positive");
  if (n > cap)
    throw CapError("enumerate_cycle_types: n = " + std::to_string(n) +
                   " exceeds enumeration cap " + std::to_string(cap));
  std::vector<std::pair<CycleType, ExactProbability>> out;
  PartitionGenerator gen(n);
  IntegerPartition p;
  while (gen.next(p)) {
    CycleType t = CycleType::from_partition(p);
    ExactProbability w = cycle_type_probability(t);
    out.emplace_back(std::move(t), std::move(w));
  }
  return out;
}

Permutation sample_uniform(std::uint32_t n, Rng& rng) {
  if (n == 0) throw DomainError("sample_uniform: n must be positive");
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 1u);
  for (std::uint32_t i = n - 1; i >= 1; --i) {
    const std::uint64_t j = rng.below(i + 1);
    std::swap(images[i], images[j]);
  }
  return Permutation(std::move(images));
}

PartialCycleType sample_poisson_counts(std::uint32_t k, Rng& rng) {
  if (k == 0) throw DomainError("sample_poisson_counts: k must be positive");
  std::vector<std::uint32_t> counts(k);
  for (std::uint32_t j = 1; j <= k; ++j)
    counts[j - 1] = rng.poisson(1.0 / static_cast<double>(j));
  return PartialCycleType(std::move(counts));
}

mpz_class count_long_cycle_permutations(std::uint32_t n_prime,
                                        std::uint32_t k) {
  std::vector<mpz_class> A(n_prime + 1);
  A[0] = 1;
  for (std::uint32_t i = 1; i <= n_prime; ++i) {
    if (i <= k) {
      A[i] = 0;  // cannot cover i points with cycles all longer than k
      continue;
    }
    mpz_class total = 0;
    // falling = (i-1)(i-2)...(i-j+1), maintained incrementally over j.
    mpz_class falling = 1;
    for (std::uint32_t j = 2; j <= k + 1; ++j) falling *= i - j + 1;
    for (std::uint32_t j = k + 1; j <= i; ++j) {
      total += falling * A[i - j];
      if (j < i) falling *= i - j;
    }
    A[i] = total;
  }
  return A[n_prime];
}

mpz_class count_prescribed_small_cycles(std::uint32_t n,
                                        const PartialCycleType& c,
                                        std::uint32_t k) {
  if (k == 0 || k > n)
    throw DomainError("count_prescribed_small_cycles: need 1 <= k <= n");
  for (std::uint32_t j = k + 1; j <= c.support(); ++j)
    if (c.count(j) != 0)
      throw DomainError(
          "count_prescribed_small_cycles: c has support beyond k");
  const std::uint64_t S = c.weighted_sum();
  if (S > n)
    throw MismatchError("count_prescribed_small_cycles: S(c) exceeds n");

  // Ways to realize the prescribed cycles on S labeled points:
  // S! / prod(c_i! * i^{c_i}).
  mpz_class arrangements = factorial(S);
  for (std::uint32_t i = 1; i <= std::min<std::uint32_t>(k, c.support()); ++i) {
    const std::uint32_t ci = c.count(i);
    if (ci == 0) continue;
    mpz_class pow_i;
    mpz_ui_pow_ui(pow_i.get_mpz_t(), i, ci);
    mpz_class div = factorial(ci) * pow_i;
    mpz_divexact(arrangements.get_mpz_t(), arrangements.get_mpz_t(),
                 div.get_mpz_t());
  }
  return binomial(n, S) * arrangements *
         count_long_cycle_permutations(static_cast<std::uint32_t>(n - S), k);
}

}  // namespace fixset
