// Invariant-set decompositions with divisibility constraints: feasibility
// per cycle type, exact probabilities vs the brute-force oracle, the
// divisible-cycle count recurrence, and the comparison bounds.

#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "fixset/errors.hpp"
#include "fixset/fixedsets.hpp"
#include "fixset/permcore.hpp"
#include "fixset/rational.hpp"

using namespace fixset;

namespace {

ExactProbability frac(long num, long den) {
  return ExactProbability(mpz_class(num), mpz_class(den));
}

// All ordered ways to write n as m positive parts.
void compositions(std::uint32_t n, std::uint32_t m,
                  std::vector<std::uint32_t>& prefix,
                  std::vector<std::vector<std::uint32_t>>& out) {
  if (m == 1) {
    if (n >= 1) {
      prefix.push_back(n);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (std::uint32_t first = 1; first + (m - 1) <= n; ++first) {
    prefix.push_back(first);
    compositions(n - first, m - 1, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::uint32_t> divisors_of(std::uint32_t v) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= v; ++d)
    if (v % d == 0) out.push_back(d);
  return out;
}

// Every valid KDVectors with the given n and m: all compositions k, all
// divisor choices d.
std::vector<KDVectors> all_queries(std::uint32_t n, std::uint32_t m) {
  std::vector<std::vector<std::uint32_t>> ks;
  std::vector<std::uint32_t> prefix;
  compositions(n, m, prefix, ks);
  std::vector<KDVectors> out;
  for (const auto& k : ks) {
    std::vector<std::vector<std::uint32_t>> dchoices{{}};
    for (std::uint32_t part : k) {
      std::vector<std::vector<std::uint32_t>> next;
      for (const auto& base : dchoices)
        for (std::uint32_t d : divisors_of(part)) {
          auto ext = base;
          ext.push_back(d);
          next.push_back(std::move(ext));
        }
      dchoices = std::move(next);
    }
    for (const auto& d : dchoices) out.emplace_back(k, d);
  }
  return out;
}

}  // namespace

TEST_CASE("KDVectors validation and canonical keys") {
  CHECK_THROWS_AS(KDVectors({2, 2}, {2}), DomainError);        // length mismatch
  CHECK_THROWS_AS(KDVectors({2, 2}, {3, 1}), DomainError);     // 3 does not divide 2
  CHECK_THROWS_AS(KDVectors({2, 0}, {1, 1}), DomainError);     // zero part
  CHECK_THROWS_AS(KDVectors({}, {}), DomainError);             // empty
  KDVectors a({2, 4}, {2, 1});
  KDVectors b({4, 2}, {1, 2});
  CHECK(a.canonical_key() == b.canonical_key());
  CHECK(a.n == 6);
  CHECK(a.m() == 2);
}

TEST_CASE("feasible: direct examples") {
  KDVectors even_pairs({2, 2}, {2, 2});
  CHECK(feasible(CycleType({0, 2}), even_pairs));

  KDVectors plain({2, 2}, {1, 1});
  CHECK_FALSE(feasible(CycleType({1, 0, 1}), plain));

  // Three 2-cycles and a 3-cycle on 9 points: {1..6} gets the 2-divisible
  // cycles, {7,8,9} the 3-cycle.
  Permutation p({4, 5, 6, 1, 2, 3, 8, 9, 7});
  CycleType t = cycle_type(p);
  CHECK(t.counts() == std::vector<std::uint32_t>{0, 3, 1, 0, 0, 0, 0, 0, 0});
  CHECK(feasible(t, KDVectors({6, 3}, {2, 1})));

  // A counts vector whose weighted sum disagrees with the query's n must
  // raise the mismatch error (here S = 3*2 + 1*6 = 12 != 9).
  CHECK_THROWS_AS(feasible(CycleType({0, 3, 0, 0, 0, 1}), KDVectors({6, 3}, {2, 1})),
                  MismatchError);
}

TEST_CASE("exact_i: frozen values") {
  CHECK(exact_i(KDVectors({2, 2}, {1, 1})) == frac(5, 12));
  CHECK(exact_i(KDVectors({4}, {1})) == frac(1, 1));
  CHECK(exact_i(KDVectors({3}, {3})) == frac(1, 3));
}

TEST_CASE("f_divisible: frozen values and base cases") {
  CHECK(f_divisible(4, 2) == 9);
  CHECK(f_divisible(3, 3) == 2);
  CHECK(f_divisible(2, 2) == 1);
  CHECK(f_divisible(0, 5) == 1);
  CHECK(f_divisible(3, 2) == 0);  // no permutation of 3 points has all even cycles
}

TEST_CASE("brute_force_i: frozen values and cap") {
  CHECK(brute_force_i(KDVectors({2, 2}, {1, 1})) == frac(5, 12));
  CHECK(brute_force_i(KDVectors({1, 1}, {1, 1})) == frac(1, 2));
  CHECK(brute_force_i(KDVectors({4}, {2})) == frac(3, 8));
  CHECK_THROWS_AS(brute_force_i(KDVectors({5, 5}, {1, 1})), CapError);
}

TEST_CASE("oracle equivalence on all queries with n <= 6, m <= 3") {
  for (std::uint32_t n = 1; n <= 6; ++n)
    for (std::uint32_t m = 1; m <= std::min(n, 3u); ++m)
      for (const KDVectors& kd : all_queries(n, m))
        CHECK(exact_i(kd) == brute_force_i(kd));
}

TEST_CASE("oracle equivalence spot checks at n = 7 and 8") {
  for (const KDVectors& kd :
       {KDVectors({7}, {7}), KDVectors({4, 3}, {2, 3}), KDVectors({3, 2, 2}, {1, 2, 1}),
        KDVectors({8}, {4}), KDVectors({6, 2}, {3, 2}), KDVectors({4, 2, 2}, {2, 2, 2}),
        KDVectors({4, 4}, {4, 2})}) {
    CHECK(exact_i(kd) == brute_force_i(kd));
  }
}

TEST_CASE("exact_i(n,(n),(d)) equals f_divisible(n,d)/n! for d | n, n <= 30") {
  for (std::uint32_t n = 2; n <= 30; ++n) {
    for (std::uint32_t d = 2; d <= n; ++d) {
      if (n % d != 0) continue;
      ExactProbability lhs = exact_i(KDVectors({n}, {d}));
      ExactProbability rhs(f_divisible(n, d), factorial(n));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("f_divisible(n,d)/n! <= n^(-1+1/d) for d | n, n <= 200") {
  for (std::uint32_t n = 2; n <= 200; ++n) {
    for (std::uint32_t d = 2; d <= n; ++d) {
      if (n % d != 0) continue;
      mpq_class fr(f_divisible(n, d), factorial(n));
      fr.canonicalize();
      const double bound =
          std::pow(double(n), -1.0 + 1.0 / double(d));
      CHECK(fr.get_d() <= bound);
    }
  }
}

TEST_CASE("submultiplicativity over splits of small queries") {
  for (std::uint32_t n = 2; n <= 6; ++n) {
    for (std::uint32_t m = 2; m <= std::min(n, 3u); ++m) {
      for (const KDVectors& kd : all_queries(n, m)) {
        ExactProbability whole = exact_i(kd);
        // Split the classes into every nonempty proper subset and its complement.
        for (std::uint32_t mask = 1; mask + 1 < (1u << m); ++mask) {
          std::vector<std::uint32_t> k1, d1, k2, d2;
          for (std::uint32_t i = 0; i < m; ++i) {
            if (mask & (1u << i)) {
              k1.push_back(kd.k[i]);
              d1.push_back(kd.d[i]);
            } else {
              k2.push_back(kd.k[i]);
              d2.push_back(kd.d[i]);
            }
          }
          ExactProbability left = exact_i(KDVectors(k1, d1));
          ExactProbability right = exact_i(KDVectors(k2, d2));
          CHECK(whole.value() <= left.value() * right.value());
        }
      }
    }
  }
}

TEST_CASE("crude product bound") {
  CHECK(crude_bound(KDVectors({2, 2}, {1, 1})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(crude_bound(KDVectors({4}, {2})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(crude_bound(KDVectors({3, 3}, {3, 1})) ==
        doctest::Approx(std::pow(3.0, -2.0 / 3.0)).epsilon(1e-12));

  for (std::uint32_t n = 2; n <= 6; ++n)
    for (std::uint32_t m = 1; m <= std::min(n, 3u); ++m)
      for (const KDVectors& kd : all_queries(n, m))
        CHECK(exact_i(kd).to_double() <= crude_bound(kd) + 1e-12);
}

TEST_CASE("exact_i is invariant under jointly permuting the (k,d) pairs") {
  CHECK(exact_i(KDVectors({2, 4}, {2, 1})) == exact_i(KDVectors({4, 2}, {1, 2})));
  CHECK(exact_i(KDVectors({1, 2, 3}, {1, 2, 3})) ==
        exact_i(KDVectors({3, 2, 1}, {3, 2, 1})));
  CHECK(exact_i(KDVectors({2, 2, 4}, {1, 2, 2})) ==
        exact_i(KDVectors({4, 2, 2}, {2, 2, 1})));
}

TEST_CASE("feasibility cache: same answers, shared entries") {
  FeasibilityCache cache;
  ExactOptions opt;
  opt.cache = &cache;
  KDVectors kd({4, 4}, {2, 1});
  ExactProbability with_cache = exact_i(kd, opt);
  CHECK(cache.size() > 0);
  std::size_t after_first = cache.size();
  CHECK(exact_i(kd, opt) == with_cache);
  CHECK(cache.size() == after_first);  // fully memoized second run
  CHECK(exact_i(kd) == with_cache);    // uncached agrees
}

TEST_CASE("exact_i honors the enumeration cap and thread count") {
  ExactOptions small_cap;
  small_cap.enumeration_cap = 3;
  CHECK_THROWS_AS(exact_i(KDVectors({2, 2}, {1, 1}), small_cap), CapError);

  ExactOptions threaded;
  threaded.threads = 4;
  CHECK(exact_i(KDVectors({6, 6}, {2, 3}), threaded) ==
        exact_i(KDVectors({6, 6}, {2, 3})));
}

TEST_CASE("local_global_report: exact column and positive ratios") {
  Rng rng(31);
  auto rows = local_global_report({2, 4, 8, 10}, 4000, rng);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].n == 2);
  CHECK(rows[0].exact == frac(1, 2));
  CHECK(rows[1].n == 4);
  CHECK(rows[1].exact == frac(5, 12));
  for (const auto& row : rows) {
    CHECK(row.ratio > 0.0);
    CHECK(std::isfinite(row.ratio));
    CHECK(row.lset_over_k > 0.0);
    CHECK(row.lset_stderr_over_k >= 0.0);
  }
  CHECK_THROWS_AS(local_global_report({3}, 100, rng), DomainError);  // odd n
}
