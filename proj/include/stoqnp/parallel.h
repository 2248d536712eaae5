// Copyright 2026 The stoqnp Authors
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

#ifndef STOQNP_PARALLEL_H
#define STOQNP_PARALLEL_H

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace stoqnp {

/// Calls f(i) for i in [0, n) on up to `threads` threads. Each index is
/// handled exactly once; the first exception is rethrown.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F &&f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; i++) {
      f(i);
    }
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; t++) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) {
          f(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    });
  }
  for (auto &th : pool) {
    th.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

}  // namespace stoqnp

#endif
