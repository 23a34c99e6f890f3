// Copyright 2026 The speechveil Authors.
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

#ifndef SPEECHVEIL_PIPELINE_PARALLEL_H_
#define SPEECHVEIL_PIPELINE_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace speechveil {

// Calls fn(i) for every i in [0, n) on up to `workers` threads. Callers write
// results into slot i, so output order never depends on scheduling. The first
// exception thrown by any call is rethrown after all workers stop.
template <typename Fn>
void ParallelFor(std::size_t n, int workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i; !stop && (i = next.fetch_add(1)) < n;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
    }
  };
  const std::size_t extra =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1))) - (n > 0);
  {
    std::vector<std::jthread> threads;
    threads.reserve(extra);
    for (std::size_t k = 0; k < extra; ++k) threads.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace speechveil

#endif  // SPEECHVEIL_PIPELINE_PARALLEL_H_
