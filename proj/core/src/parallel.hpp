#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qcsp::detail {

// Calls fn(i) for every i < n on up to `threads` threads (the caller's
// included). fn must be safe to run concurrently.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) fn(i);
  };
  std::vector<std::thread> pool;
  const auto extra = std::min<std::size_t>(std::max(1U, threads), std::max<std::size_t>(n, 1)) - 1;
  for (std::size_t t = 0; t < extra; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

}  // namespace qcsp::detail
