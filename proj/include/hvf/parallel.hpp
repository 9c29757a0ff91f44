#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hvf {

/// Number of shards a data-parallel loop is cut into. Fixed so that
/// results do not depend on the number of threads.
inline constexpr std::size_t kShards = 64;

/// Runs body(shard, begin, end) over [0, count) cut into kShards contiguous
/// ranges, on up to hardware_concurrency threads. Callers write per-shard
/// partial results and reduce them in shard order.
template <class Body>
void for_each_shard(std::size_t count, Body body) {
  const std::size_t shards = std::min<std::size_t>(kShards, std::max<std::size_t>(count, 1));
  auto range = [&](std::size_t s) {
    return std::pair{count * s / shards, count * (s + 1) / shards};
  };
  const std::size_t threads =
      std::min<std::size_t>(shards, std::max(1u, std::thread::hardware_concurrency()));
  if (threads <= 1) {
    for (std::size_t s = 0; s < shards; ++s) {
      auto [b, e] = range(s);
      body(s, b, e);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t s = next++; s < shards; s = next++) {
        try {
          auto [b, e] = range(s);
          body(s, b, e);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hvf
