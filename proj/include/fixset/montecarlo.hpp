#pragma once

#include <cmath>
#include <cstdint>

#include "fixset/errors.hpp"
#include "fixset/parallel.hpp"
#include "fixset/rng.hpp"

namespace fixset {

// Result of a Monte Carlo run: sample mean, standard error of the mean, and
// the number of trials that produced them.
struct Estimate {
  double value = 0.0;
  double stderr_value = 0.0;
  std::int64_t trials = 0;
};

// Count / sum / sum-of-squares accumulator. Merging in a fixed order keeps
// double-precision results bit-identical across thread counts.
struct Moments {
  double n = 0.0;
  double sum = 0.0;
  double sumsq = 0.0;

  void add(double x) {
    n += 1.0;
    sum += x;
    sumsq += x * x;
  }

  Moments& merge(const Moments& other) {
    n += other.n;
    sum += other.sum;
    sumsq += other.sumsq;
    return *this;
  }

  Estimate to_estimate() const {
    Estimate e;
    e.trials = static_cast<std::int64_t>(n);
    e.value = sum / n;
    double var = (sumsq - sum * sum / n) / (n - 1.0);
    if (var < 0.0) var = 0.0;  // guard tiny negative rounding residue
    e.stderr_value = std::sqrt(var / n);
    return e;
  }
};

// Number of independent sub-streams a Monte Carlo run is split into. Fixed
// (not tied to the thread count) so estimates are reproducible bit-for-bit
// for any --threads value.
inline constexpr std::size_t kMcChunks = 64;

// Run `trials` evaluations of sample(rng) -> double, split across kMcChunks
// deterministic child streams of `rng`, optionally in parallel. `sample` must
// be safe to call concurrently from several threads on distinct Rng objects.
template <typename SampleFn>
Estimate mc_run(std::int64_t trials, const Rng& rng, unsigned threads,
                SampleFn&& sample) {
  if (trials < 2) throw DomainError("Monte Carlo needs at least 2 trials");
  const std::size_t n_chunks =
      std::min<std::size_t>(kMcChunks, static_cast<std::size_t>(trials));
  Moments total = run_chunked(
      n_chunks, threads,
      [&](std::size_t chunk) {
        auto [begin, end] =
            chunk_range(static_cast<std::size_t>(trials), n_chunks, chunk);
        Rng worker = rng.split(chunk);
        Moments m;
        for (std::size_t t = begin; t < end; ++t) m.add(sample(worker));
        return m;
      },
      Moments{}, [](Moments acc, Moments part) { return acc.merge(part); });
  return total.to_estimate();
}

}  // namespace fixset
