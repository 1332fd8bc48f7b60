#include "fixset/lsets.hpp"

#include <algorithm>
#include <functional>

#include "fixset/permcore.hpp"

namespace fixset {

namespace {

void check_m(std::uint32_t m) {
  if (m < 2) throw DomainError("number of classes m must be at least 2");
}

// Enumerate all ways to put `count` identical cycles of length `len` into
// classes 1..m-1 (class m takes the rest implicitly), invoking visit(add)
// where add[i] is the total length added to class i. Compositions are walked
// colexicographically (first coordinate varying fastest); the visit order
// does not affect the resulting set, only determinism of construction.
void for_each_composition(std::uint32_t count, std::uint32_t len,
                          std::uint32_t m,
                          const std::function<void(const std::vector<std::uint64_t>&)>& visit) {
  std::vector<std::uint64_t> add(m - 1, 0);
  std::function<void(int, std::uint32_t)> rec = [&](int idx,
                                                    std::uint32_t left) {
    if (idx < 0) {
      visit(add);
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      add[idx] = static_cast<std::uint64_t>(v) * len;
      rec(idx - 1, left - v);
    }
    add[idx] = 0;
  };
  rec(static_cast<int>(m) - 2, count);
}

}  // namespace

PartialCycleType multiplicity_vector(const LengthMultiset& a) {
  std::uint32_t max_len = 0;
  for (std::uint32_t v : a.a) {
    if (v == 0) throw DomainError("length multiset entries must be positive");
    max_len = std::max(max_len, v);
  }
  std::vector<std::uint32_t> counts(max_len, 0);
  for (std::uint32_t v : a.a) ++counts[v - 1];
  return PartialCycleType(std::move(counts));
}

TupleSet lset(const PartialCycleType& c, std::uint32_t m,
              std::uint64_t tuple_budget) {
  check_m(m);
  TupleSet out;
  out.m = m;
  out.total = c.weighted_sum();
  std::set<std::vector<std::uint64_t>> cur;
  cur.insert(std::vector<std::uint64_t>(m - 1, 0));
  for (std::uint32_t j = 1; j <= c.support(); ++j) {
    const std::uint32_t cj = c.count(j);
    if (cj == 0) continue;
    std::set<std::vector<std::uint64_t>> next;
    for (const auto& base : cur) {
      for_each_composition(cj, j, m, [&](const std::vector<std::uint64_t>& add) {
        std::vector<std::uint64_t> t(base);
        for (std::uint32_t i = 0; i < m - 1; ++i) t[i] += add[i];
        next.insert(std::move(t));
        if (next.size() > tuple_budget)
          throw CapError("lset: tuple budget exceeded at length " +
                         std::to_string(j));
      });
    }
    cur = std::move(next);
  }
  out.tuples = std::move(cur);
  return out;
}

mpz_class lset_size(const PartialCycleType& c, std::uint32_t m,
                    std::uint64_t tuple_budget) {
  return mpz_class(static_cast<unsigned long>(lset(c, m, tuple_budget).size()));
}

TupleSet lset_star(const LengthMultiset& a, std::uint32_t m,
                   std::uint32_t star_cap, std::uint64_t tuple_budget) {
  check_m(m);
  if (a.r() > star_cap)
    throw CapError("lset_star: element count " + std::to_string(a.r()) +
                   " exceeds cap " + std::to_string(star_cap));
  TupleSet out;
  out.m = m;
  std::uint64_t total = 0;
  std::set<std::vector<std::uint64_t>> cur;
  cur.insert(std::vector<std::uint64_t>(m - 1, 0));
  for (std::uint32_t v : a.a) {
    if (v == 0) throw DomainError("length multiset entries must be positive");
    total += v;
    std::set<std::vector<std::uint64_t>> next;
    for (const auto& base : cur) {
      // Element v joins one of classes 1..m-1 explicitly, or class m (no
      // change to the projection).
      next.insert(base);
      for (std::uint32_t i = 0; i < m - 1; ++i) {
        std::vector<std::uint64_t> t(base);
        t[i] += v;
        next.insert(std::move(t));
      }
      if (next.size() > tuple_budget)
        throw CapError("lset_star: tuple budget exceeded");
    }
    cur = std::move(next);
  }
  out.total = total;
  out.tuples = std::move(cur);
  return out;
}

mpz_class g_bound(const LengthMultiset& a, std::uint32_t m) {
  check_m(m);
  std::vector<std::uint32_t> sorted(a.a);
  std::sort(sorted.begin(), sorted.end());
  const std::uint32_t r = a.r();
  mpz_class best = 0;
  std::uint64_t prefix = 0;
  for (std::uint32_t j = 0; j <= r; ++j) {
    if (j > 0) prefix += sorted[j - 1];
    mpz_class head;
    mpz_ui_pow_ui(head.get_mpz_t(), prefix + 1, m - 1);
    mpz_class tail;
    mpz_ui_pow_ui(tail.get_mpz_t(), m, r - j);
    mpz_class term = head * tail;
    if (j == 0 || term < best) best = term;
  }
  return best;
}

Estimate expected_lset_size(std::uint32_t k, std::uint32_t m,
                            std::int64_t trials, const Rng& rng,
                            unsigned threads, std::uint64_t tuple_budget) {
  check_m(m);
  if (k == 0) throw DomainError("expected_lset_size: k must be positive");
  return mc_run(trials, rng, threads, [&](Rng& worker) {
    const PartialCycleType c = sample_poisson_counts(k, worker);
    // Exact size, never dropped: retry at raised budget tiers if needed.
    std::uint64_t budget = tuple_budget;
    for (int tier = 0;; ++tier) {
      try {
        return static_cast<double>(lset(c, m, budget).size());
      } catch (const CapError&) {
        if (tier >= 2)
          throw CapError(
              "expected_lset_size: tuple budget exceeded even after raising "
              "the tier twice");
        budget *= 8;
      }
    }
  });
}

}  // namespace fixset
