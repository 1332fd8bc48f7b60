#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "fixset/errors.hpp"

namespace fixset {

// SplitMix64 finalizer; used to spread seeds and derive child streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic randomness source with an explicit 64-bit seed and documented
// stream splitting: split(i) yields a child stream fully determined by
// (seed, i), independent of how much the parent has already consumed. All
// derived quantities (bounded integers, unit doubles, Poisson counts) are
// produced by bit-specified algorithms so output is identical across
// platforms and standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  // Unbiased uniform draw from {0, ..., bound-1} via rejection sampling.
  // (std::uniform_int_distribution is implementation-defined; this is not.)
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("Rng::below: bound must be positive");
    const std::uint64_t reject_under = (-bound) % bound;  // 2^64 mod bound
    std::uint64_t r = next_u64();
    while (r < reject_under) r = next_u64();
    return r % bound;
  }

  // Uniform double in [0,1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Poisson draw by CDF inversion; intended for rates lambda <= 1, where the
  // expected number of iterations is ~1. The iteration guard only protects
  // against pathological floating-point edge cases.
  unsigned poisson(double lambda) {
    if (!(lambda > 0))
      throw DomainError("Rng::poisson: rate must be positive");
    const double u = unit();
    double p = std::exp(-lambda);
    double cum = p;
    unsigned x = 0;
    while (u >= cum && x < 4096) {
      ++x;
      p *= lambda / x;
      cum += p;
    }
    return x;
  }

  // Child stream i; deterministic in (seed, i) only.
  Rng split(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x6A09E667F3BCC909ull)));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace fixset
