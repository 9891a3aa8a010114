// Copyright 2026 the csd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSD_PARALLEL_HPP
#define CSD_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace csd {

inline size_t default_thread_count() {
  if (const char *env = std::getenv("CSD_THREADS")) {
    long v = std::atol(env);
    if (v > 0) {
      return size_t(v);
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

/// Runs body(i) for i in [0, count) across up to `threads` workers. Work items
/// are claimed atomically; callers that need deterministic output should write
/// into per-index slots and reduce in index order afterwards.
inline void parallel_for(size_t count, size_t threads, const std::function<void(size_t)> &body) {
  if (threads <= 1 || count <= 1) {
    for (size_t i = 0; i < count; i++) {
      body(i);
    }
    return;
  }
  std::atomic<size_t> next{0};
  size_t workers = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; w++) {
    pool.emplace_back([&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) {
          return;
        }
        body(i);
      }
    });
  }
  for (auto &t : pool) {
    t.join();
  }
}

}  // namespace csd

#endif
