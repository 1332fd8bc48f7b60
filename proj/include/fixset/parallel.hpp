#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace fixset {

// Resolve a requested worker count: 0 means "use hardware concurrency".
inline unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Contiguous range [begin, end) of items assigned to `chunk` when `total`
// items are split into `n_chunks` nearly equal pieces.
inline std::pair<std::size_t, std::size_t> chunk_range(std::size_t total,
                                                       std::size_t n_chunks,
                                                       std::size_t chunk) {
  const std::size_t base = total / n_chunks;
  const std::size_t rem = total % n_chunks;
  const std::size_t begin = chunk * base + std::min(chunk, rem);
  return {begin, begin + base + (chunk < rem ? 1 : 0)};
}

// Evaluate fn(chunk) for chunk = 0..n_chunks-1 on up to `threads` workers and
// fold the per-chunk results in increasing chunk order. The fold order is
// fixed, so the combined result is identical for every thread count (exact
// types trivially; floating-point accumulations because the additions happen
// in the same order regardless of scheduling).
template <typename T, typename ChunkFn, typename CombineFn>
T run_chunked(std::size_t n_chunks, unsigned threads, ChunkFn&& fn, T init,
              CombineFn&& combine) {
  std::vector<T> results(n_chunks);
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(effective_threads(threads), n_chunks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) results[i] = fn(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n_chunks;
             i = next.fetch_add(1)) {
          if (failed.load()) return;
          try {
            results[i] = fn(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!first_error) first_error = std::current_exception();
            failed.store(true);
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  T acc = std::move(init);
  for (std::size_t i = 0; i < n_chunks; ++i)
    acc = combine(std::move(acc), std::move(results[i]));
  return acc;
}

}  // namespace fixset
