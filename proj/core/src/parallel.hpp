// Copyright 2026 The medforest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace medforest::detail {

inline unsigned effective_threads(unsigned requested, std::uint64_t work) {
  if (requested <= 1 || work < 2) return 1;
  return static_cast<unsigned>(
      std::min<std::uint64_t>(requested, work));
}

/// Smallest i in [0, count) with pred(i), or count if none. With several
/// threads every index below the answer is still evaluated, so the result
/// matches the sequential scan.
template <typename Pred>
std::uint64_t first_index_where(std::uint64_t count, unsigned threads,
                                Pred&& pred) {
  threads = effective_threads(threads, count);
  if (threads == 1) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return count;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{count};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      while (true) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= count || i >= best.load()) return;
        if (pred(i)) {
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return best.load();
}

/// Runs fn(chunk_index) for chunk_index in [0, chunks) across threads.
template <typename Fn>
void parallel_chunks(std::size_t chunks, unsigned threads, Fn&& fn) {
  threads = effective_threads(threads, chunks);
  if (threads == 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
        fn(c);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(chunks);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace medforest::detail
