#pragma once

// Block-splitting parallel loop over [0, n). Workers get contiguous ranges,
// so writers that own disjoint rows need no synchronisation. Results must
// not depend on which worker ran which block.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace nilgraph {

inline unsigned default_workers() {
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  if (workers == 0) workers = default_workers();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  if (std::size_t(workers) > n) workers = unsigned(n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = std::size_t(w) * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace nilgraph
