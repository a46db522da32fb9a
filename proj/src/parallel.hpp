// Copyright 2026 The QLDP Authors
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


#ifndef QLDP_SRC_PARALLEL_HPP_
#define QLDP_SRC_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace qldp::detail {

// Runs fn(i) for i in [0, count), strided over `threads` workers (0 means
// hardware concurrency). fn must only write to slot i of its output.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  const auto workers = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += workers) fn(i);
    });
  }
}

}  // namespace qldp::detail

#endif  // QLDP_SRC_PARALLEL_HPP_
