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

// Random-restart, derivative-free maximization used by privacy
// certification and the utility searches. Every evaluated point is feasible,
// so the returned value is always attained (a lower bound on the true
// supremum).

#ifndef QLDP_SEARCH_HPP_
#define QLDP_SEARCH_HPP_

#include <cstdint>
#include <functional>

#include "qldp/qops.hpp"

namespace qldp {

struct SearchConfig {
  int restarts = 64;
  // Nelder-Mead iterations per restart, summed over simplex re-inflations.
  int local_steps = 600;
  // Initial simplex edge in the real parameterization.
  double step_size = 0.25;
  std::uint64_t seed = 0x5eedULL;
  // 0 means std::thread::hardware_concurrency().
  int threads = 0;
};

void validate(const SearchConfig& config);

using RealObjective = std::function<double(const RealVector&)>;
using RealSampler = std::function<RealVector(Rng&)>;

struct RealSearchResult {
  double value = 0.0;
  RealVector point;
  int restarts_used = 0;
};

// Maximizes `objective` from config.restarts starting points drawn with
// `sampler`, each refined by Nelder-Mead. Restart r uses
// make_stream(config.seed, r); the best restart wins, ties to the lowest
// index, so the result does not depend on the thread count.
RealSearchResult maximize(const RealObjective& objective,
                          const RealSampler& sampler,
                          const SearchConfig& config);

using FrameObjective = std::function<double(const Matrix&)>;

struct FrameSearchResult {
  double value = 0.0;
  // dim x k with orthonormal columns.
  Matrix frame;
  int restarts_used = 0;
};

// Maximizes over dim x k isometries. Points are complex Gaussian matrices
// mapped through dense::orthonormalize, so every candidate is feasible.
FrameSearchResult maximize_over_frames(int dim, int k,
                                       const FrameObjective& objective,
                                       const SearchConfig& config);

// Complex dim x k matrix from its 2 * dim * k real coordinates.
Matrix unpack_complex(const RealVector& x, int dim, int k);

}  // namespace qldp

#endif  // QLDP_SEARCH_HPP_
