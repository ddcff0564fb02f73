// Copyright 2026 The Rolegraph Authors.
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

#ifndef ROLEGRAPH_PARALLEL_H_
#define ROLEGRAPH_PARALLEL_H_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rolegraph {

// Default worker count: $ROLEGRAPH_THREADS when set, else hardware threads.
inline int DefaultThreadCount() {
  if (const char* env = std::getenv("ROLEGRAPH_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end, worker) over contiguous chunks of [0, n). Chunk
// boundaries only depend on n and num_threads; callers must write results
// into per-index slots so the output is independent of scheduling.
template <typename Fn>
void ParallelForChunks(int64_t n, int num_threads, Fn&& fn) {
  if (n <= 0) return;
  const int workers =
      static_cast<int>(std::clamp<int64_t>(num_threads, 1, n));
  if (workers == 1) {
    fn(int64_t{0}, n, 0);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int64_t begin = w * chunk;
    const int64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

template <typename Fn>
void ParallelFor(int64_t n, int num_threads, Fn&& fn) {
  ParallelForChunks(n, num_threads, [&](int64_t begin, int64_t end, int) {
    for (int64_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_PARALLEL_H_
