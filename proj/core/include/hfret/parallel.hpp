// Copyright 2026 the hfret authors
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

#ifndef HFRET_PARALLEL_HPP
#define HFRET_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hfret {

/// Global worker-count cap (0 = hardware concurrency).  Results never
/// depend on the cap; only wall time does.
inline std::atomic<unsigned>& detail_thread_cap() {
  static std::atomic<unsigned> cap{0};
  return cap;
}
inline void set_max_threads(unsigned n) { detail_thread_cap() = n; }
inline unsigned max_threads() {
  const unsigned c = detail_thread_cap();
  if (c != 0) return c;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

inline bool& detail_in_worker() {
  thread_local bool flag = false;
  return flag;
}

/// Run body(i) for i in [0, n) on a transient thread pool.  Work items
/// must be independent; any deterministic seeding must derive from i.
/// Nested calls from inside a worker run serially instead of
/// oversubscribing.
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t)>& body) {
  unsigned workers = max_threads();
  if (workers <= 1 || n <= 1 || detail_in_worker()) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, n));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      detail_in_worker() = true;
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

} // namespace hfret

#endif // HFRET_PARALLEL_HPP
