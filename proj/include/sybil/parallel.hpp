#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace sybil::detail {

/// Runs fn(0..blocks-1) on a few threads and returns the failure reported by
/// the lowest-numbered failing block, so the answer does not depend on
/// scheduling. fn returns std::nullopt for a clean block. Blocks numbered
/// above the best failure found so far are skipped.
template <typename Result, typename Fn>
std::optional<std::pair<std::size_t, Result>> first_failure(std::size_t blocks, unsigned threads, Fn&& fn) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(blocks, 1)));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::mutex mutex;
  std::optional<std::pair<std::size_t, Result>> found;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t block = next.fetch_add(1);
        if (block >= blocks || block > best.load()) {
          return;
        }
        std::optional<Result> result = fn(block);
        if (result) {
          std::lock_guard lock(mutex);
          if (!found || block < found->first) {
            found.emplace(block, std::move(*result));
            best.store(block);
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return found;
}

}  // namespace sybil::detail
