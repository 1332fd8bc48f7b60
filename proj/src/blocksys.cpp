#include "fixset/blocksys.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "fixset/parallel.hpp"
#include "fixset/permcore.hpp"

namespace fixset {

BlockSystemQuery::BlockSystemQuery(std::uint32_t n_in, std::uint32_t nu_in)
    : n(n_in), nu(nu_in) {
  if (n == 0 || nu <= 1 || nu >= n)
    throw DomainError("BlockSystemQuery: need 1 < nu < n");
  if (n % nu != 0)
    throw DomainError("BlockSystemQuery: nu must divide n");
}

double delta(std::uint32_t m) {
  if (m < 2) throw DomainError("delta: m must be at least 2");
  const double T = (m - 1) / std::log(static_cast<double>(m));
  return T * std::log(T) - T + 1.0;
}

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = std::log(lm), frm = std::log(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta15 = (left + right - whole) / 15.0;
  if (depth <= 0 || std::abs(delta15) <= tol)
    return left + right + delta15;
  return adaptive_simpson(a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double delta_integral(std::uint32_t m) {
  if (m < 2) throw DomainError("delta_integral: m must be at least 2");
  const double T = (m - 1) / std::log(static_cast<double>(m));
  const double fa = std::log(1.0), fm = std::log(0.5 * (1.0 + T)),
               fb = std::log(T);
  const double whole = simpson(1.0, T, fa, fm, fb);
  return adaptive_simpson(1.0, T, fa, fm, fb, whole, 1e-13, 48);
}

ExponentReport dominant_partition(std::uint32_t nu) {
  if (nu < 2 || nu > 64)
    throw DomainError("dominant_partition: need 2 <= nu <= 64");
  ExponentReport report;
  report.nu = nu;
  for (std::uint32_t d = 1; d <= nu; ++d) {
    ExponentCandidate cand;
    std::vector<std::uint32_t> parts{d};
    for (std::uint32_t i = 0; i < nu - d; ++i) parts.push_back(1);
    cand.partition = IntegerPartition(std::move(parts));
    if (d == 1) {
      cand.exponent = delta(nu);
    } else if (d <= nu - 2) {
      cand.exponent = 1.0 - 1.0 / d + delta(nu - d);
    } else if (d == nu - 1) {
      cand.exponent = 1.0 - 1.0 / (nu - 1);
    } else {  // d == nu
      cand.exponent = 1.0 - 1.0 / nu;
    }
    report.candidates.push_back(std::move(cand));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < report.candidates.size(); ++i)
    if (report.candidates[i].exponent < report.candidates[best].exponent)
      best = i;
  constexpr double kTieGuard = 1e-9;
  for (std::size_t i = 0; i < report.candidates.size(); ++i)
    if (i != best && report.candidates[i].exponent <
                         report.candidates[best].exponent + kTieGuard)
      report.ambiguous = true;
  report.dominant = report.candidates[best].partition;
  report.dominant_exponent = report.candidates[best].exponent;
  return report;
}

namespace {

// The fixed-set constraint vectors induced by a partition (d_1..d_m) of nu at
// block size s: k_i = d_i * s, divisor d_i.
KDVectors kd_for_split(const IntegerPartition& split, std::uint32_t s) {
  std::vector<std::uint32_t> k, d;
  k.reserve(split.size());
  d.reserve(split.size());
  for (std::uint32_t di : split.parts()) {
    k.push_back(di * s);
    d.push_back(di);
  }
  return KDVectors(std::move(k), std::move(d));
}

// Splits of nu ordered with the predicted dominant shape first (it accepts
// most qualifying cycle types, so the existential check short-circuits early).
std::vector<IntegerPartition> splits_dominant_first(std::uint32_t nu) {
  std::vector<IntegerPartition> splits = partitions_of(nu);
  IntegerPartition predicted;
  if (nu <= 4) {
    predicted = IntegerPartition(std::vector<std::uint32_t>(nu, 1));
  } else {
    predicted = IntegerPartition({nu - 1, 1});
  }
  auto it = std::find(splits.begin(), splits.end(), predicted);
  if (it != splits.end()) std::rotate(splits.begin(), it, it + 1);
  return splits;
}

}  // namespace

ExactProbability exact_I(const BlockSystemQuery& q, const ExactOptions& opt) {
  const auto types = enumerate_cycle_types(q.n, opt.enumeration_cap);
  const std::uint32_t s = q.block_size();
  const std::vector<IntegerPartition> splits = splits_dominant_first(q.nu);
  std::vector<KDVectors> kds;
  kds.reserve(splits.size());
  for (const auto& split : splits) kds.push_back(kd_for_split(split, s));

  const std::size_t n_chunks =
      std::min<std::size_t>(std::max<std::size_t>(types.size() / 64, 1), 32);
  mpq_class total = run_chunked(
      n_chunks, opt.threads,
      [&](std::size_t chunk) {
        auto [begin, end] = chunk_range(types.size(), n_chunks, chunk);
        mpq_class part = 0;
        for (std::size_t idx = begin; idx < end; ++idx) {
          const CycleType& type = types[idx].first;
          for (const KDVectors& kd : kds) {
            const bool ok = opt.cache ? opt.cache->feasible(type, kd)
                                      : feasible(type, kd);
            if (ok) {
              part += types[idx].second.value();
              break;
            }
          }
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

// Lehmer rank of a permutation given as 1-based images, in [0, n!).
std::uint32_t lehmer_rank(const std::vector<std::uint32_t>& images) {
  const std::size_t n = images.size();
  std::uint32_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (images[j] < images[i]) ++smaller;
    rank = rank * static_cast<std::uint32_t>(n - i) + smaller;
  }
  return rank;
}

// Enumerate all partitions of {1..n} into nu blocks of size s (first point of
// each block is its least remaining point, killing block-order symmetry).
void for_each_block_partition(
    std::uint32_t n, std::uint32_t nu, std::uint32_t s,
    const std::function<void(const std::vector<std::vector<std::uint32_t>>&)>& visit) {
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<bool> used(n + 1, false);
  std::function<void()> rec = [&]() {
    if (blocks.size() == nu) {
      visit(blocks);
      return;
    }
    std::uint32_t anchor = 1;
    while (used[anchor]) ++anchor;
    used[anchor] = true;
    std::vector<std::uint32_t> block{anchor};
    // Choose the remaining s-1 members from points above the anchor.
    std::function<void(std::uint32_t)> choose = [&](std::uint32_t from) {
      if (block.size() == s) {
        blocks.push_back(block);
        rec();
        blocks.pop_back();
        return;
      }
      for (std::uint32_t p = from; p <= n; ++p) {
        if (used[p]) continue;
        used[p] = true;
        block.push_back(p);
        choose(p + 1);
        block.pop_back();
        used[p] = false;
      }
    };
    choose(anchor + 1);
    used[anchor] = false;
  };
  rec();
}

}  // namespace

ExactProbability brute_force_I(const BlockSystemQuery& q) {
  if (q.n > 9) throw CapError("brute_force_I: n > 9");
  const std::uint32_t n = q.n, nu = q.nu, s = q.block_size();
  const mpz_class total = factorial(n);
  std::vector<bool> marked(mpz_get_ui(total.get_mpz_t()), false);

  // For one block partition, enumerate its stabilizer: a block permutation
  // sigma in S_nu plus an arbitrary bijection block_b -> block_{sigma(b)} for
  // every b; mark each element's Lehmer rank.
  std::vector<std::uint32_t> block_perm(nu);
  for_each_block_partition(n, nu, s, [&](const std::vector<std::vector<std::uint32_t>>& blocks) {
    for (std::uint32_t i = 0; i < nu; ++i) block_perm[i] = i;
    do {
      // Odometer over per-block bijections: each block b maps to the target
      // block via one of s! orderings.
      std::vector<std::uint32_t> ordering(nu, 0);  // index into s! orders
      std::vector<std::uint32_t> perm_buf(s);
      const std::uint32_t s_fact = [s] {
        std::uint32_t f = 1;
        for (std::uint32_t i = 2; i <= s; ++i) f *= i;
        return f;
      }();
      std::vector<std::uint32_t> images(n);
      while (true) {
        for (std::uint32_t b = 0; b < nu; ++b) {
          const auto& src = blocks[b];
          const auto& dst = blocks[block_perm[b]];
          // Decode ordering[b] as the Lehmer code of a permutation of s.
          std::vector<std::uint32_t> avail(dst);
          std::uint32_t code = ordering[b];
          for (std::uint32_t i = 0; i < s; ++i) {
            std::uint32_t radix = 1;
            for (std::uint32_t t = 2; t <= s - 1 - i; ++t) radix *= t;
            const std::uint32_t pick = code / radix;
            code %= radix;
            perm_buf[i] = avail[pick];
            avail.erase(avail.begin() + pick);
          }
          for (std::uint32_t i = 0; i < s; ++i)
            images[src[i] - 1] = perm_buf[i];
        }
        marked[lehmer_rank(images)] = true;
        // Advance the odometer.
        std::uint32_t pos = 0;
        while (pos < nu) {
          if (++ordering[pos] < s_fact) break;
          ordering[pos] = 0;
          ++pos;
        }
        if (pos == nu) break;
      }
    } while (std::next_permutation(block_perm.begin(), block_perm.end()));
  });

  mpz_class hits = 0;
  for (bool b : marked)
    if (b) ++hits;
  return ExactProbability(mpq_class(hits, total));
}

Estimate mc_I(const BlockSystemQuery& q, std::int64_t trials, const Rng& rng,
              unsigned threads, std::uint32_t enumeration_cap) {
  const std::uint32_t s = q.block_size();
  const std::vector<IntegerPartition> splits = splits_dominant_first(q.nu);
  std::vector<KDVectors> kds;
  kds.reserve(splits.size());
  for (const auto& split : splits) kds.push_back(kd_for_split(split, s));

  const auto qualifies = [&kds](const CycleType& type) {
    for (const KDVectors& kd : kds)
      if (feasible(type, kd)) return true;
    return false;
  };

  // Fast path: precompute the predicate for every cycle type once.
  if (q.n <= enumeration_cap) {
    std::map<std::vector<std::uint32_t>, bool> table;
    for (const auto& [type, weight] : enumerate_cycle_types(q.n)) {
      (void)weight;
      table.emplace(type.counts(), qualifies(type));
    }
    return mc_run(trials, rng, threads, [&, table](Rng& worker) {
      const Permutation p = sample_uniform(q.n, worker);
      return table.at(cycle_type(p).counts()) ? 1.0 : 0.0;
    });
  }
  return mc_run(trials, rng, threads, [&](Rng& worker) {
    const Permutation p = sample_uniform(q.n, worker);
    return qualifies(cycle_type(p)) ? 1.0 : 0.0;
  });
}

std::vector<double> coeff_exp_inv_square(std::uint32_t M) {
  if (M > 1000000) throw CapError("coeff_exp_inv_square: M > 10^6");
  std::vector<double> c(M + 1);
  c[0] = 1.0;
  for (std::uint32_t m = 1; m <= M; ++m) {
    double acc = 0.0;
    for (std::uint32_t k = 1; k <= m; ++k) acc += c[m - k] / k;
    c[m] = acc / m;
  }
  return c;
}

std::vector<mpq_class> coeff_exp_inv_square_exact(std::uint32_t M) {
  std::vector<mpq_class> c(M + 1);
  c[0] = 1;
  for (std::uint32_t m = 1; m <= M; ++m) {
    mpq_class acc = 0;
    for (std::uint32_t k = 1; k <= m; ++k)
      acc += c[m - k] / mpq_class(k);
    c[m] = acc / mpq_class(m);
  }
  return c;
}

namespace {

// Log-coefficient l_k = (1/(s! k)) * prod_{t=1}^{s-1} (1/k + t).
mpq_class f_log_coefficient(std::uint32_t s, std::uint32_t k) {
  mpq_class l(mpz_class(1), factorial(s) * k);
  for (std::uint32_t t = 1; t <= s - 1; ++t)
    l *= mpq_class(mpz_class(1 + static_cast<long>(t) * k), mpz_class(k));
  return l;
}

}  // namespace

std::vector<mpq_class> f_series_exact(std::uint32_t s, std::uint32_t degree) {
  if (s < 2) throw DomainError("f_series_exact: s must be at least 2");
  if (degree > 200) throw CapError("f_series_exact: degree > 200");
  std::vector<mpq_class> l(degree + 1);
  for (std::uint32_t k = 1; k <= degree; ++k) l[k] = f_log_coefficient(s, k);
  // Exponential of a power series: F_m = (1/m) sum_{k=1}^m k l_k F_{m-k}.
  std::vector<mpq_class> F(degree + 1);
  F[0] = 1;
  for (std::uint32_t m = 1; m <= degree; ++m) {
    mpq_class acc = 0;
    for (std::uint32_t k = 1; k <= m; ++k) acc += mpq_class(k) * l[k] * F[m - k];
    F[m] = acc / mpq_class(m);
  }
  return F;
}

std::vector<mpq_class> g_series_exact(std::uint32_t s, std::uint32_t degree) {
  if (s < 2) throw DomainError("g_series_exact: s must be at least 2");
  if (degree > 200) throw CapError("g_series_exact: degree > 200");
  // Binomial series of (1-z)^(-1/s): b_j = prod_{t=0}^{j-1} (1/s + t) / j!.
  std::vector<mpq_class> b(degree + 1);
  b[0] = 1;
  for (std::uint32_t j = 1; j <= degree; ++j)
    b[j] = b[j - 1] * mpq_class(mpz_class(1 + static_cast<long>(j - 1) * s),
                                mpz_class(static_cast<long>(j) * s));
  const std::vector<mpq_class> c = coeff_exp_inv_square_exact(degree);
  std::vector<mpq_class> g(degree + 1);
  for (std::uint32_t m = 0; m <= degree; ++m) {
    mpq_class acc = 0;
    for (std::uint32_t j = 0; j <= m; ++j) acc += b[j] * c[m - j];
    g[m] = acc;
  }
  return g;
}

SeriesBound largenu_bound(const BlockSystemQuery& q) {
  const std::uint32_t s = q.block_size();
  if (s < 2) throw DomainError("largenu_bound: block size n/nu must be >= 2");
  if (q.nu > 100000) throw CapError("largenu_bound: nu > 10^5");
  const std::uint32_t nu = q.nu;
  const std::uint32_t exact_degree = std::min<std::uint32_t>(nu, 200);

  SeriesBound out;

  // f-coefficient: exact rationals up to degree 200, doubles beyond (with
  // compensated summation in the recurrence convolution).
  {
    const std::vector<mpq_class> head = f_series_exact(s, exact_degree);
    if (nu <= 200) {
      out.f_coeff = head[nu].get_d();
    } else {
      std::vector<double> F(nu + 1);
      for (std::uint32_t i = 0; i <= 200; ++i) F[i] = head[i].get_d();
      std::vector<double> l(nu + 1);
      for (std::uint32_t k = 1; k <= nu; ++k)
        l[k] = f_log_coefficient(s, k).get_d();
      for (std::uint32_t m = 201; m <= nu; ++m) {
        double acc = 0.0, comp = 0.0;  // Kahan
        for (std::uint32_t k = 1; k <= m; ++k) {
          const double term = k * l[k] * F[m - k];
          const double y = term - comp;
          const double t = acc + y;
          comp = (t - acc) - y;
          acc = t;
        }
        F[m] = acc / m;
      }
      out.f_coeff = F[nu];
    }
  }

  // g-coefficient: exact binomial-series and exp-series pieces to 200, then
  // doubles; single convolution for the target degree.
  {
    std::vector<double> b(nu + 1), c(nu + 1);
    {
      const std::vector<mpq_class> bh = [&] {
        std::vector<mpq_class> v(exact_degree + 1);
        v[0] = 1;
        for (std::uint32_t j = 1; j <= exact_degree; ++j)
          v[j] = v[j - 1] * mpq_class(mpz_class(1 + static_cast<long>(j - 1) * s),
                                      mpz_class(static_cast<long>(j) * s));
        return v;
      }();
      for (std::uint32_t j = 0; j <= exact_degree; ++j) b[j] = bh[j].get_d();
      for (std::uint32_t j = exact_degree + 1; j <= nu; ++j)
        b[j] = b[j - 1] * (1.0 / s + (j - 1.0)) / j;
      const std::vector<mpq_class> ch = coeff_exp_inv_square_exact(exact_degree);
      for (std::uint32_t j = 0; j <= exact_degree; ++j) c[j] = ch[j].get_d();
      if (nu > exact_degree) {
        const std::vector<double> cd = coeff_exp_inv_square(nu);
        for (std::uint32_t j = exact_degree + 1; j <= nu; ++j) c[j] = cd[j];
      }
    }
    double acc = 0.0, comp = 0.0;  // Kahan
    for (std::uint32_t j = 0; j <= nu; ++j) {
      const double term = b[j] * c[nu - j];
      const double y = term - comp;
      const double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    out.g_coeff = acc;
  }
  return out;
}

double theory_I_order(const BlockSystemQuery& q) {
  const double n = q.n;
  const double log_n = std::log(n);
  const std::uint32_t nu = q.nu;
  if (nu <= 4)
    return std::pow(n, -delta(nu)) * std::pow(log_n, -1.5);
  const auto seam1 = static_cast<std::uint32_t>(std::ceil(log_n));
  const auto seam2 = static_cast<std::uint32_t>(std::ceil(n / log_n));
  if (nu < seam1) return std::pow(n, -1.0 + 1.0 / (nu - 1.0));
  if (nu < seam2) return 1.0 / n;
  return std::pow(n, -1.0 + static_cast<double>(nu) / n);
}

}  // namespace fixset
