// Copyright 2026 The loglin Authors. All rights reserved.
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

#ifndef LOGLIN_PARALLEL_H_
#define LOGLIN_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace loglin {

// Runs body(i) for i in [0, count) on up to `jobs` threads and returns the
// results indexed by i. Callers reduce the vector in index order, so the
// outcome does not depend on scheduling.
template <typename T, typename Body>
std::vector<T> ParallelMap(std::int64_t count, int jobs, Body body) {
  std::vector<T> out(static_cast<std::size_t>(count));
  const int workers =
      static_cast<int>(std::clamp<std::int64_t>(jobs, 1, std::max<std::int64_t>(count, 1)));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) out[i] = body(i);
    return out;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::int64_t i = next++; i < count; i = next++) {
        try {
          out[i] = body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace loglin

#endif  // LOGLIN_PARALLEL_H_
