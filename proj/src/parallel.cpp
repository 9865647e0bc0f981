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

#include "ssfm/parallel.hpp"

#include <atomic>

#include <omp.h>

namespace ssfm::parallel {

namespace {
std::atomic<int> configured_threads{0};
}

void set_threads(int threads) { configured_threads.store(threads < 0 ? 0 : threads); }

int threads() {
  const int t = configured_threads.load();
  return t > 0 ? t : omp_get_max_threads();
}

}  // namespace ssfm::parallel
