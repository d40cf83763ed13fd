// speechaug/parallel.h

// Copyright 2026  The speechaug Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPEECHAUG_PARALLEL_H_
#define SPEECHAUG_PARALLEL_H_

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace speechaug {

struct TaskFailure {
  std::size_t index = 0;
  std::string message;
};

/// Runs task(i) for i in [0, count) on `workers` threads. Each index is
/// claimed by exactly one worker. After the first task throws, no new
/// indices are handed out; tasks already running finish. Returns the
/// failures sorted by index (empty on success).
inline std::vector<TaskFailure> ParallelFor(std::size_t count, int workers,
                                            const std::function<void(std::size_t)> &task) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::vector<std::string> errors(count);
  std::vector<char> failed(count, 0);

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        task(i);
      } catch (const std::exception &e) {
        errors[i] = e.what();
        failed[i] = 1;
        stop.store(true);
      } catch (...) {
        errors[i] = "unknown error";
        failed[i] = 1;
        stop.store(true);
      }
    }
  };

  const auto n_threads = static_cast<std::size_t>(workers < 1 ? 1 : workers);
  if (n_threads == 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto &th : pool) th.join();
  }

  std::vector<TaskFailure> failures;
  for (std::size_t i = 0; i < count; ++i)
    if (failed[i]) failures.push_back({i, errors[i]});
  return failures;
}

}  // namespace speechaug

#endif  // SPEECHAUG_PARALLEL_H_
