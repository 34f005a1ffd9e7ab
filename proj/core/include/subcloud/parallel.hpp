/* Copyright 2026 The Subcloud Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace subcloud {

/// Requested worker count; 0 means "all hardware threads".
struct Parallelism {
  unsigned threads = 0;

  unsigned resolved() const {
    if (threads != 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

/// Runs body(i) for i in [0, n) over up to `par.resolved()` workers pulling
/// indices from a shared counter. body must only write to state owned by index
/// i; results are then independent of the schedule. The first exception thrown
/// by any body is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Parallelism par, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(par.resolved(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace subcloud
