#include "fixset/primaction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "fixset/errors.hpp"
#include "fixset/permcore.hpp"

namespace fixset {
namespace {

// Colex (combinadic) codec for k-subsets of {0,...,m-1}: the subset
// e_0 < ... < e_{k-1} has rank sum_i C(e_i, i+1). Binomials are tabulated
// with saturation just above C(m,k); ranks of valid subsets never touch a
// saturated entry, and saturated entries still compare correctly ("too big")
// during unranking.
class KSubsetCodec {
 public:
  KSubsetCodec(std::uint32_t m, std::uint32_t k, std::uint64_t total)
      : m_(m), k_(k), sat_(total + 1), tab_((m + 1) * (k + 1), 0) {
    for (std::uint32_t e = 0; e <= m_; ++e) {
      at(e, 0) = 1;
      for (std::uint32_t j = 1; j <= k_ && j <= e; ++j) {
        std::uint64_t v = at(e - 1, j - 1) + at(e - 1, j);
        at(e, j) = std::min(v, sat_);
      }
    }
  }

  // `elems` must be strictly increasing 0-based elements, size k.
  std::uint64_t rank(const std::vector<std::uint32_t>& elems) const {
    std::uint64_t r = 0;
    for (std::uint32_t i = 0; i < k_; ++i) r += at(elems[i], i + 1);
    return r;
  }

  // Writes the subset of the given rank into `out` (resized to k).
  void unrank(std::uint64_t rank, std::vector<std::uint32_t>& out) const {
    out.resize(k_);
    std::uint32_t e = m_;
    for (std::uint32_t i = k_; i-- > 0;) {
      // largest e' < e with C(e', i+1) <= rank
      while (e > i + 1 && at(e - 1, i + 1) > rank) --e;
      --e;
      out[i] = e;
      rank -= at(e, i + 1);
    }
  }

 private:
  std::uint64_t& at(std::uint32_t e, std::uint32_t j) {
    return tab_[static_cast<std::size_t>(e) * (k_ + 1) + j];
  }
  std::uint64_t at(std::uint32_t e, std::uint32_t j) const {
    return tab_[static_cast<std::size_t>(e) * (k_ + 1) + j];
  }

  std::uint32_t m_;
  std::uint32_t k_;
  std::uint64_t sat_;
  std::vector<std::uint64_t> tab_;
};

// binomial(m,k) checked against the point cap; throws CapError beyond it.
std::uint64_t checked_subset_count(std::uint32_t m, std::uint32_t k,
                                   std::uint64_t point_cap) {
  mpz_class total = binomial(m, k);
  if (mpz_cmp_ui(total.get_mpz_t(), point_cap) > 0)
    throw CapError("k-subset domain exceeds the configured point cap");
  return mpz_get_ui(total.get_mpz_t());
}

// 0-based index of top^{-1}(w+1)-1 for each coordinate w.
std::vector<std::uint32_t> inverse_top_index(const WreathElement& g) {
  Permutation inv = g.top().inverse();
  std::vector<std::uint32_t> idx(g.r());
  for (std::uint32_t w = 0; w < g.r(); ++w) idx[w] = inv.apply(w + 1) - 1;
  return idx;
}

std::uint64_t minimal_degree_from_counts(
    std::uint64_t n,
    const std::vector<std::pair<std::uint32_t, std::uint64_t>>& length_counts) {
  // Collect every prime dividing a present cycle length, with the largest
  // exponent e_q it attains among the lengths.
  std::map<std::uint32_t, std::uint32_t> max_exp;
  bool nontrivial = false;
  for (const auto& [j, c] : length_counts) {
    if (c == 0) continue;
    if (j > 1) nontrivial = true;
    std::uint32_t rest = j;
    for (std::uint32_t q = 2; static_cast<std::uint64_t>(q) * q <= rest; ++q) {
      if (rest % q != 0) continue;
      std::uint32_t e = 0;
      while (rest % q == 0) {
        rest /= q;
        ++e;
      }
      std::uint32_t& slot = max_exp[q];
      slot = std::max(slot, e);
    }
    if (rest > 1) {
      std::uint32_t& slot = max_exp[rest];
      slot = std::max(slot, 1u);
    }
  }
  if (!nontrivial)
    throw DomainError("minimal degree is undefined for the identity");

  // Every admissible exponent t (one with p^t != 1) divides ord/q for some
  // prime q | ord, and fixed counts only grow under divisibility, so the
  // minimum of moved(p^t) = n - sum_{j | t} j*c_j is attained at t = ord/q.
  // j | ord/q is equivalent to v_q(j) < e_q.
  std::uint64_t best = n;
  for (const auto& [q, e_q] : max_exp) {
    std::uint64_t fixed = 0;
    for (const auto& [j, c] : length_counts) {
      if (c == 0) continue;
      std::uint32_t rest = j;
      std::uint32_t e = 0;
      while (rest % q == 0) {
        rest /= q;
        ++e;
      }
      if (e < e_q) fixed += static_cast<std::uint64_t>(j) * c;
    }
    best = std::min(best, n - fixed);
  }
  return best;
}

std::vector<std::pair<std::uint32_t, std::uint64_t>> run_length_counts(
    const std::vector<std::uint32_t>& sorted_lengths) {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
  for (std::uint32_t len : sorted_lengths) {
    if (!counts.empty() && counts.back().first == len)
      ++counts.back().second;
    else
      counts.emplace_back(len, 1);
  }
  return counts;
}

}  // namespace

WreathElement::WreathElement(std::uint32_t m, std::vector<Permutation> base,
                             Permutation top)
    : m_(m),
      r_(static_cast<std::uint32_t>(base.size())),
      base_(std::move(base)),
      top_(std::move(top)) {
  if (m_ == 0) throw DomainError("wreath element needs m >= 1");
  if (r_ == 0) throw DomainError("wreath element needs at least one base coordinate");
  if (top_.degree() != r_)
    throw MismatchError("top permutation degree must equal the number of base coordinates");
  for (const Permutation& p : base_)
    if (p.degree() != m_)
      throw MismatchError("every base permutation must have degree m");
}

WreathElement WreathElement::identity(std::uint32_t m, std::uint32_t r) {
  std::vector<Permutation> base(r, Permutation::identity(m));
  return WreathElement(m, std::move(base), Permutation::identity(r));
}

bool WreathElement::is_identity() const {
  if (!top_.is_identity()) return false;
  for (const Permutation& p : base_)
    if (!p.is_identity()) return false;
  return true;
}

WreathElement wreath_multiply(const WreathElement& g, const WreathElement& h) {
  if (g.m() != h.m() || g.r() != h.r())
    throw MismatchError("wreath product factors must share m and r");
  const std::vector<std::uint32_t> g_tinv = inverse_top_index(g);
  std::vector<Permutation> base;
  base.reserve(g.r());
  for (std::uint32_t w = 0; w < g.r(); ++w)
    base.push_back(g.base()[w].compose(h.base()[g_tinv[w]]));
  return WreathElement(g.m(), std::move(base), g.top().compose(h.top()));
}

std::vector<std::uint32_t> wreath_apply(const WreathElement& g,
                                        const std::vector<std::uint32_t>& x) {
  if (x.size() != g.r())
    throw MismatchError("point arity must equal the number of coordinates");
  for (std::uint32_t v : x)
    if (v == 0 || v > g.m())
      throw DomainError("point coordinate outside {1,...,m}");
  const std::vector<std::uint32_t> tinv = inverse_top_index(g);
  std::vector<std::uint32_t> out(g.r());
  for (std::uint32_t w = 0; w < g.r(); ++w)
    out[w] = g.base()[w].apply(x[tinv[w]]);
  return out;
}

std::vector<std::vector<std::uint32_t>> wreath_apply_ksets(
    const WreathElement& g, const std::vector<std::vector<std::uint32_t>>& x) {
  if (x.size() != g.r())
    throw MismatchError("tuple arity must equal the number of coordinates");
  const std::size_t k = x.empty() ? 0 : x.front().size();
  for (const auto& set : x) {
    if (set.empty() || set.size() != k)
      throw MismatchError("all subsets in a tuple must share one size");
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] == 0 || set[i] > g.m())
        throw DomainError("subset element outside {1,...,m}");
      if (i > 0 && set[i] <= set[i - 1])
        throw DomainError("subset elements must be strictly increasing");
    }
  }
  const std::vector<std::uint32_t> tinv = inverse_top_index(g);
  std::vector<std::vector<std::uint32_t>> out(g.r());
  for (std::uint32_t w = 0; w < g.r(); ++w) {
    std::vector<std::uint32_t> image;
    image.reserve(k);
    for (std::uint32_t v : x[tinv[w]]) image.push_back(g.base()[w].apply(v));
    std::sort(image.begin(), image.end());
    out[w] = std::move(image);
  }
  return out;
}

mpz_class fixed_ksets(const Permutation& p, std::uint32_t k) {
  if (k == 0) return 1;
  if (k > p.degree()) return 0;
  // Coefficient of z^k in prod over cycles of (1 + z^len), truncated at k.
  std::vector<mpz_class> coeff(k + 1, 0);
  coeff[0] = 1;
  for (std::uint32_t len : p.cycle_lengths()) {
    if (len > k) continue;
    for (std::uint32_t deg = k; deg >= len; --deg) coeff[deg] += coeff[deg - len];
  }
  return coeff[k];
}

mpz_class wreath_fixed_points(const WreathElement& g, std::uint32_t k,
                              FixedPointMode mode, std::uint64_t point_cap) {
  if (k < 1 || k >= g.m())
    throw DomainError("fixed k-set count needs 1 <= k < m");
  if (mode == FixedPointMode::kAuto)
    mode = g.top().is_identity() ? FixedPointMode::kFormula
                                 : FixedPointMode::kExhaustive;

  if (mode == FixedPointMode::kFormula) {
    if (!g.top().is_identity())
      throw DomainError(
          "the per-coordinate product formula requires an identity top "
          "permutation");
    mpz_class product = 1;
    for (const Permutation& p : g.base()) product *= fixed_ksets(p, k);
    return product;
  }

  // Exhaustive sweep over binomial(m,k)^r ranked subset tuples.
  mpz_class domain = binomial(g.m(), k);
  mpz_class domain_pow;
  mpz_pow_ui(domain_pow.get_mpz_t(), domain.get_mpz_t(), g.r());
  if (mpz_cmp_ui(domain_pow.get_mpz_t(), point_cap) > 0)
    throw CapError("subset-tuple domain exceeds the configured point cap");
  const std::uint64_t n_subsets = mpz_get_ui(domain.get_mpz_t());
  const KSubsetCodec codec(g.m(), k, n_subsets);
  const std::vector<std::uint32_t> tinv = inverse_top_index(g);

  if (g.r() == 1) {
    // Stream without materializing the induced index map.
    std::uint64_t count = 0;
    std::vector<std::uint32_t> subset, image(k);
    for (std::uint64_t i = 0; i < n_subsets; ++i) {
      codec.unrank(i, subset);
      for (std::uint32_t j = 0; j < k; ++j)
        image[j] = g.base()[0].apply(subset[j] + 1) - 1;
      std::sort(image.begin(), image.end());
      if (codec.rank(image) == i) ++count;
    }
    return mpz_class(count);
  }

  // Precompute the induced index permutation of each base coordinate; with
  // r >= 2 each table has at most sqrt(cap) entries.
  std::vector<std::vector<std::uint64_t>> induced(g.r());
  {
    std::vector<std::uint32_t> subset, image(k);
    for (std::uint32_t w = 0; w < g.r(); ++w) {
      induced[w].resize(n_subsets);
      for (std::uint64_t i = 0; i < n_subsets; ++i) {
        codec.unrank(i, subset);
        for (std::uint32_t j = 0; j < k; ++j)
          image[j] = g.base()[w].apply(subset[j] + 1) - 1;
        std::sort(image.begin(), image.end());
        induced[w][i] = codec.rank(image);
      }
    }
  }

  std::uint64_t count = 0;
  std::vector<std::uint64_t> x(g.r(), 0);
  while (true) {
    bool fixed = true;
    for (std::uint32_t w = 0; w < g.r(); ++w) {
      if (induced[w][x[tinv[w]]] != x[w]) {
        fixed = false;
        break;
      }
    }
    if (fixed) ++count;
    std::uint32_t pos = 0;
    while (pos < g.r()) {
      if (++x[pos] < n_subsets) break;
      x[pos] = 0;
      ++pos;
    }
    if (pos == g.r()) break;
  }
  return mpz_class(count);
}

mpz_class minimal_degree_product_action(std::uint32_t m, std::uint32_t k,
                                        std::uint32_t r) {
  if (m < 5) throw DomainError("product-action minimal degree needs m >= 5");
  if (k < 1 || k > m - 1)
    throw DomainError("product-action minimal degree needs 1 <= k <= m-1");
  if (r < 1) throw DomainError("product-action minimal degree needs r >= 1");

  mpz_class b = binomial(m, k);
  mpz_class b_pow_rm1;
  mpz_pow_ui(b_pow_rm1.get_mpz_t(), b.get_mpz_t(), r - 1);
  mpz_class b_pow_r = b_pow_rm1 * b;

  // Moved points of a transposition in one coordinate: total points minus the
  // fixed ones, (C(m-2,k) + C(m-2,k-2)) per affected coordinate slice.
  mpz_class fixed_slice = binomial(m - 2, k);
  if (k >= 2) fixed_slice += binomial(m - 2, k - 2);
  mpz_class direct = b_pow_r - fixed_slice * b_pow_rm1;

  // The equal fraction form 2k(m-k)/(m(m-1)) * C(m,k)^r, kept exact.
  mpq_class closed(mpz_class(2) * k * (m - k) * b_pow_r,
                   mpz_class(m) * (m - 1));
  closed.canonicalize();
  if (closed.get_den() != 1 || closed.get_num() != direct)
    throw Error("the two closed forms of the product-action minimal degree disagree");
  return direct;
}

std::uint64_t kset_cycle_count(const Permutation& p, std::uint32_t k,
                               std::uint64_t point_cap) {
  const std::uint32_t m = p.degree();
  if (k < 1 || k > m)
    throw DomainError("k-subset cycle count needs 1 <= k <= degree");
  const std::uint64_t n_points = checked_subset_count(m, k, point_cap);
  const KSubsetCodec codec(m, k, n_points);

  std::vector<bool> visited(n_points, false);
  std::vector<std::uint32_t> subset, image(k);
  std::uint64_t cycles = 0;
  for (std::uint64_t start = 0; start < n_points; ++start) {
    if (visited[start]) continue;
    ++cycles;
    std::uint64_t cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      codec.unrank(cur, subset);
      for (std::uint32_t j = 0; j < k; ++j)
        image[j] = p.apply(subset[j] + 1) - 1;
      std::sort(image.begin(), image.end());
      cur = codec.rank(image);
    }
  }
  return cycles;
}

std::uint64_t wreath_cycle_count(const WreathElement& g,
                                 std::uint64_t point_cap) {
  mpz_class domain;
  mpz_ui_pow_ui(domain.get_mpz_t(), g.m(), g.r());
  if (mpz_cmp_ui(domain.get_mpz_t(), point_cap) > 0)
    throw CapError("tuple domain exceeds the configured point cap");
  const std::uint64_t n_points = mpz_get_ui(domain.get_mpz_t());
  const std::vector<std::uint32_t> tinv = inverse_top_index(g);

  // Mixed-radix ranking of (x_1,...,x_r), coordinate 1 least significant.
  std::vector<std::uint32_t> x(g.r()), y(g.r());
  auto decode = [&](std::uint64_t rank, std::vector<std::uint32_t>& out) {
    for (std::uint32_t i = 0; i < g.r(); ++i) {
      out[i] = static_cast<std::uint32_t>(rank % g.m()) + 1;
      rank /= g.m();
    }
  };
  auto encode = [&](const std::vector<std::uint32_t>& in) {
    std::uint64_t rank = 0;
    for (std::uint32_t i = g.r(); i-- > 0;)
      rank = rank * g.m() + (in[i] - 1);
    return rank;
  };

  std::vector<bool> visited(n_points, false);
  std::uint64_t cycles = 0;
  for (std::uint64_t start = 0; start < n_points; ++start) {
    if (visited[start]) continue;
    ++cycles;
    std::uint64_t cur = start;
    while (!visited[cur]) {
      visited[cur] = true;
      decode(cur, x);
      for (std::uint32_t w = 0; w < g.r(); ++w)
        y[w] = g.base()[w].apply(x[tinv[w]]);
      cur = encode(y);
    }
  }
  return cycles;
}

std::uint64_t minimal_degree_cyclic(const Permutation& p) {
  return minimal_degree_from_counts(p.degree(),
                                    run_length_counts(p.cycle_lengths()));
}

std::uint64_t minimal_degree_cyclic(const CycleType& type) {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
  for (std::uint32_t j = 1; j <= type.n(); ++j)
    if (type.count(j) > 0) counts.emplace_back(j, type.count(j));
  return minimal_degree_from_counts(type.n(), counts);
}

Estimate mc_minimal_degree(std::uint32_t n, double alpha, std::uint64_t trials,
                           Rng& rng, int threads) {
  if (n < 1) throw DomainError("degree must be positive");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("alpha must lie strictly between 0 and 1");
  const double threshold = std::pow(static_cast<double>(n), alpha);
  return mc_run(static_cast<std::int64_t>(trials), rng,
                static_cast<unsigned>(threads < 0 ? 0 : threads),
                [n, threshold](Rng& worker) -> double {
                  Permutation p = sample_uniform(n, worker);
                  auto counts = run_length_counts(p.cycle_lengths());
                  if (counts.size() == 1 && counts.front().first == 1)
                    return 0.0;  // identity never qualifies
                  const std::uint64_t moved =
                      minimal_degree_from_counts(n, counts);
                  return static_cast<double>(moved) >= threshold ? 1.0 : 0.0;
                });
}

}  // namespace fixset
