#include "fixset/fixedsets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "fixset/parallel.hpp"

namespace fixset {

KDVectors::KDVectors(std::vector<std::uint32_t> k_in,
                     std::vector<std::uint32_t> d_in)
    : k(std::move(k_in)), d(std::move(d_in)) {
  if (k.empty() || k.size() != d.size())
    throw DomainError("KDVectors: k and d must be nonempty, equal length");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) throw DomainError("KDVectors: part sizes must be positive");
    if (d[i] == 0) throw DomainError("KDVectors: divisors must be positive");
    if (k[i] % d[i] != 0)
      throw DomainError("KDVectors: d_" + std::to_string(i + 1) +
                        " does not divide k_" + std::to_string(i + 1));
    total += k[i];
  }
  if (total > 0xFFFFFFFFull) throw DomainError("KDVectors: n too large");
  n = static_cast<std::uint32_t>(total);
}

std::string KDVectors::canonical_key() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) pairs.emplace_back(k[i], d[i]);
  std::sort(pairs.begin(), pairs.end());
  std::string key;
  for (const auto& [ki, di] : pairs)
    key += std::to_string(ki) + "/" + std::to_string(di) + ";";
  return key;
}

bool feasible(const CycleType& c, const KDVectors& kd) {
  if (c.n() != kd.n)
    throw MismatchError("feasible: cycle type degree " + std::to_string(c.n()) +
                        " != n = " + std::to_string(kd.n));
  const std::uint32_t m = kd.m();
  const std::uint32_t d_last = kd.d[m - 1];
  const std::uint64_t k_last = kd.k[m - 1];
  std::uint64_t k_head = 0;  // sum of explicit class targets
  for (std::uint32_t i = 0; i + 1 < m; ++i) k_head += kd.k[i];

  // State: residual targets for classes 1..m-1; class m absorbs the rest.
  std::vector<std::uint64_t> init(kd.k.begin(), kd.k.end() - 1);
  std::set<std::vector<std::uint64_t>> states;
  states.insert(std::move(init));

  std::uint64_t processed = 0;
  for (std::uint32_t j = c.n(); j >= 1; --j) {
    const std::uint32_t cj = c.count(j);
    if (cj == 0) continue;
    processed += static_cast<std::uint64_t>(j) * cj;
    const bool last_accepts = (j % d_last == 0);
    std::vector<std::uint32_t> open;  // explicit classes accepting length j
    for (std::uint32_t i = 0; i + 1 < m; ++i)
      if (j % kd.d[i] == 0) open.push_back(i);

    std::set<std::vector<std::uint64_t>> next;
    for (const auto& r : states) {
      // Distribute the cj copies of length j over the open classes; x[t] goes
      // to class open[t], the remainder to class m (allowed only if
      // last_accepts or the remainder is zero).
      std::vector<std::uint64_t> work(r);
      std::function<void(std::size_t, std::uint32_t)> place =
          [&](std::size_t t, std::uint32_t left) {
            if (t == open.size()) {
              if (left > 0 && !last_accepts) return;
              // Prune states that already over-fill the implicit class.
              std::uint64_t head_residual = 0;
              for (std::uint64_t v : work) head_residual += v;
              const std::uint64_t assigned_last =
                  processed - (k_head - head_residual);
              if (assigned_last > k_last) return;
              next.insert(work);
              return;
            }
            const std::uint32_t cls = open[t];
            const auto max_here = static_cast<std::uint32_t>(
                std::min<std::uint64_t>(left, work[cls] / j));
            for (std::uint32_t x = 0; x <= max_here; ++x) {
              work[cls] = r[cls] - static_cast<std::uint64_t>(x) * j;
              place(t + 1, left - x);
            }
            work[cls] = r[cls];
          };
      place(0, cj);
    }
    states = std::move(next);
    if (states.empty()) return false;
  }
  const std::vector<std::uint64_t> zero(m - 1, 0);
  return states.count(zero) > 0;
}

bool FeasibilityCache::feasible(const CycleType& c, const KDVectors& kd) {
  std::string key = kd.canonical_key();
  key += "|";
  for (std::uint32_t j = 1; j <= c.n(); ++j) {
    const std::uint32_t cj = c.count(j);
    if (cj) key += std::to_string(j) + "^" + std::to_string(cj) + ".";
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
  }
  const bool value = fixset::feasible(c, kd);
  std::lock_guard<std::mutex> lock(mu_);
  map_.emplace(std::move(key), value);
  return value;
}

std::size_t FeasibilityCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

ExactProbability exact_i(const KDVectors& kd, const ExactOptions& opt) {
  const auto types = enumerate_cycle_types(kd.n, opt.enumeration_cap);
  const std::size_t n_chunks =
      std::min<std::size_t>(std::max<std::size_t>(types.size() / 64, 1), 32);
  mpq_class total = run_chunked(
      n_chunks, opt.threads,
      [&](std::size_t chunk) {
        auto [begin, end] = chunk_range(types.size(), n_chunks, chunk);
        mpq_class part = 0;
        for (std::size_t idx = begin; idx < end; ++idx) {
          const bool ok = opt.cache ? opt.cache->feasible(types[idx].first, kd)
                                    : feasible(types[idx].first, kd);
          if (ok) part += types[idx].second.value();
        }
        return part;
      },
      mpq_class(0), [](mpq_class acc, mpq_class part) {
        acc += part;
        return acc;
      });
  return ExactProbability(std::move(total));
}

namespace {

// Exhaustive assignment of an explicit cycle-length list to classes, with no
// multiset compression: every cycle independently tries each class whose
// divisor accepts it, tracking residual capacities. Independent algorithm
// from the DP in feasible().
bool assignable(const std::vector<std::uint32_t>& lengths, const KDVectors& kd,
                std::size_t idx, std::vector<std::uint64_t>& residual) {
  if (idx == lengths.size()) {
    for (std::uint64_t r : residual)
      if (r != 0) return false;
    return true;
  }
  const std::uint32_t len = lengths[idx];
  for (std::uint32_t i = 0; i < kd.m(); ++i) {
    if (len % kd.d[i] != 0) continue;
    if (residual[i] < len) continue;
    residual[i] -= len;
    if (assignable(lengths, kd, idx + 1, residual)) {
      residual[i] += len;
      return true;
    }
    residual[i] += len;
  }
  return false;
}

}  // namespace

ExactProbability brute_force_i(const KDVectors& kd) {
  if (kd.n > 9) throw CapError("brute_force_i: n > 9");
  std::vector<std::uint32_t> images(kd.n);
  for (std::uint32_t i = 0; i < kd.n; ++i) images[i] = i + 1;
  // Feasibility depends only on the sorted cycle-length list; memoizing by it
  // is a pure cache in front of the exhaustive assignment search.
  std::map<std::vector<std::uint32_t>, bool> memo;
  mpz_class hits = 0;
  mpz_class total = 0;
  do {
    const Permutation p(images);
    const std::vector<std::uint32_t> lengths = p.cycle_lengths();
    auto it = memo.find(lengths);
    if (it == memo.end()) {
      std::vector<std::uint64_t> residual(kd.k.begin(), kd.k.end());
      const bool ok = assignable(lengths, kd, 0, residual);
      it = memo.emplace(lengths, ok).first;
    }
    if (it->second) ++hits;
    ++total;
  } while (std::next_permutation(images.begin(), images.end()));
  return ExactProbability(mpq_class(hits, total));
}

Estimate mc_i(const KDVectors& kd, std::int64_t trials, const Rng& rng,
              unsigned threads, std::uint32_t enumeration_cap) {
  // Fast path: precompute feasibility for every cycle type once.
  if (kd.n <= enumeration_cap) {
    std::map<std::vector<std::uint32_t>, bool> table;
    for (const auto& [type, weight] : enumerate_cycle_types(kd.n)) {
      (void)weight;
      table.emplace(type.counts(), feasible(type, kd));
    }
    return mc_run(trials, rng, threads, [&, table](Rng& worker) {
      const Permutation p = sample_uniform(kd.n, worker);
      return table.at(cycle_type(p).counts()) ? 1.0 : 0.0;
    });
  }
  return mc_run(trials, rng, threads, [&](Rng& worker) {
    const Permutation p = sample_uniform(kd.n, worker);
    return feasible(cycle_type(p), kd) ? 1.0 : 0.0;
  });
}

mpz_class f_divisible(std::uint64_t n, std::uint32_t d) {
  if (d < 2) throw DomainError("f_divisible: d must be at least 2");
  if (n == 0) return 1;
  if (n < d) return 0;
  // f(n) = (n-1)(n-2)...(n-d+2) * (n-d+1)^2 * f(n-d)
  mpz_class factor = 1;
  for (std::uint64_t t = n - d + 2; t <= n - 1; ++t) factor *= t;
  const mpz_class square = mpz_class(n - d + 1) * mpz_class(n - d + 1);
  return factor * square * f_divisible(n - d, d);
}

double crude_bound(const KDVectors& kd) {
  double prod = 1.0;
  for (std::uint32_t i = 0; i < kd.m(); ++i)
    prod *= std::pow(static_cast<double>(kd.k[i]),
                     -1.0 + 1.0 / static_cast<double>(kd.d[i]));
  return prod;
}

std::vector<LocalGlobalRow> local_global_report(
    const std::vector<std::uint32_t>& n_list, std::int64_t trials,
    const Rng& rng, const ExactOptions& opt) {
  std::vector<LocalGlobalRow> rows;
  rows.reserve(n_list.size());
  for (const std::uint32_t n : n_list) {
    if (n < 2 || n % 2 != 0)
      throw DomainError("local_global_report: n must be even and >= 2");
    const std::uint32_t k = n / 2;
    LocalGlobalRow row;
    row.n = n;
    row.exact = exact_i(KDVectors({k, k}, {1, 1}), opt);
    const Estimate est =
        expected_lset_size(k, 2, trials, rng.split(n), opt.threads);
    row.lset_over_k = est.value / k;
    row.lset_stderr_over_k = est.stderr_value / k;
    row.ratio = row.exact.to_double() / row.lset_over_k;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fixset
