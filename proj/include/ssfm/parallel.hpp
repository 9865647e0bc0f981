// Copyright 2026 The ssfmlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSFM_PARALLEL_HPP
#define SSFM_PARALLEL_HPP

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

namespace ssfm {

/// Selects the trial-loop kernel. `serial` is the reference implementation the
/// parallel kernel is tested against; both produce bit-identical results.
enum class Execution { serial, parallel };

namespace parallel {

/// Worker count used by `Execution::parallel` loops. 0 restores the OpenMP default.
void set_threads(int threads);
int threads();

/// Reference loop: body(i) for i in [0, count) in index order.
template <typename Body>
void for_each_serial(std::size_t count, Body&& body) {
  for (std::size_t i = 0; i < count; ++i) body(i);
}

/// OpenMP loop over independent indices. Each index must write only to its own
/// output slot; the first exception thrown by any index is rethrown here.
template <typename Body>
void for_each_parallel(std::size_t count, Body&& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads())
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <typename Body>
void for_each(Execution exec, std::size_t count, Body&& body) {
  if (exec == Execution::serial) {
    for_each_serial(count, body);
  } else {
    for_each_parallel(count, body);
  }
}

}  // namespace parallel
}  // namespace ssfm

#endif  // SSFM_PARALLEL_HPP
