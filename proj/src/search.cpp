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

#include "qldp/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace qldp {

namespace {

struct LocalResult {
  double value;
  RealVector point;
};

// Adaptive Nelder-Mead (Gao & Han parameters) maximizing f. Returns after
// convergence or when `budget` iterations are spent; `budget` is decremented.
LocalResult nelder_mead(const RealObjective& f, const RealVector& start,
                        double step, int& budget) {
  const Eigen::Index n = start.size();
  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<RealVector> simplex(static_cast<std::size_t>(n + 1), start);
  std::vector<double> values(static_cast<std::size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    simplex[static_cast<std::size_t>(i + 1)](i) += step;
  }
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  while (budget > 0) {
    --budget;
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return values[a] > values[b];
    });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double diameter = 0.0;
    for (const RealVector& v : simplex) {
      diameter = std::max(diameter, (v - simplex[best]).lpNorm<Eigen::Infinity>());
    }
    const double spread = values[best] - values[worst];
    if (diameter < 1e-10 ||
        (spread <= 1e-15 * (1.0 + std::abs(values[best])) && diameter < 1e-7)) {
      break;
    }

    RealVector centroid = RealVector::Zero(n);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= dn;

    const RealVector xr = centroid + reflect * (centroid - simplex[worst]);
    const double fr = f(xr);
    if (fr > values[best]) {
      const RealVector xe = centroid + expand * (xr - centroid);
      const double fe = f(xe);
      if (fe > fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr > values[second_worst]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr > values[worst];
    const RealVector xc =
        outside ? RealVector(centroid + contract * (xr - centroid))
                : RealVector(centroid + contract * (simplex[worst] - centroid));
    const double fc = f(xc);
    if (fc > (outside ? fr : values[worst])) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + shrink * (simplex[i] - simplex[best]);
      values[i] = f(simplex[i]);
    }
  }
  const auto it = std::max_element(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(it - values.begin());
  return {*it, simplex[idx]};
}

// Nelder-Mead with simplex re-inflation around the incumbent until a
// re-inflated run stops improving or the budget is exhausted.
LocalResult refine(const RealObjective& f, RealVector start, double step,
                   int budget) {
  LocalResult best{f(start), start};
  double current_step = step;
  while (budget > 0) {
    LocalResult next = nelder_mead(f, best.point, current_step, budget);
    const double gain = next.value - best.value;
    if (next.value > best.value) best = std::move(next);
    if (gain <= 1e-13 * (1.0 + std::abs(best.value))) break;
    current_step = std::max(current_step * 0.3, 1e-6);
  }
  return best;
}

int resolve_threads(const SearchConfig& config) {
  int threads = config.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::clamp(threads, 1, config.restarts);
}

}  // namespace

void validate(const SearchConfig& config) {
  require(config.restarts >= 1, ErrorCode::kInvalidInput,
          "search needs restarts >= 1");
  require(config.local_steps >= 0, ErrorCode::kInvalidInput,
          "search needs local_steps >= 0");
  require(config.step_size > 0.0 && std::isfinite(config.step_size),
          ErrorCode::kInvalidInput, "search needs a positive step_size");
}

RealSearchResult maximize(const RealObjective& objective,
                          const RealSampler& sampler,
                          const SearchConfig& config) {
  validate(config);
  const auto restarts = static_cast<std::size_t>(config.restarts);
  std::vector<LocalResult> results(restarts);

  auto run_one = [&](std::size_t r) {
    Rng rng = make_stream(config.seed, r);
    results[r] = refine(objective, sampler(rng), config.step_size,
                        config.local_steps);
  };

  const int threads = resolve_threads(config);
  if (threads == 1) {
    for (std::size_t r = 0; r < restarts; ++r) run_one(r);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = static_cast<std::size_t>(t); r < restarts;
             r += static_cast<std::size_t>(threads)) {
          run_one(r);
        }
      });
    }
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (results[r].value > results[best].value) best = r;
  }
  return {results[best].value, results[best].point, config.restarts};
}

Matrix unpack_complex(const RealVector& x, int dim, int k) {
  Matrix m(dim, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < dim; ++i) {
      const Eigen::Index base = 2 * (static_cast<Eigen::Index>(j) * dim + i);
      m(i, j) = Complex(x(base), x(base + 1));
    }
  }
  return m;
}

FrameSearchResult maximize_over_frames(int dim, int k,
                                       const FrameObjective& objective,
                                       const SearchConfig& config) {
  require(dim >= 1 && k >= 1 && k <= dim, ErrorCode::kInvalidInput,
          "frame search needs 1 <= k <= dim");
  const auto to_frame = [dim, k](const RealVector& x) {
    return dense::orthonormalize(unpack_complex(x, dim, k));
  };
  const RealObjective f = [&](const RealVector& x) {
    return objective(to_frame(x));
  };
  const RealSampler sampler = [dim, k](Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    RealVector x(2 * dim * k);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
    // Unit scale per column keeps step_size meaningful across dimensions.
    return RealVector(x / std::sqrt(static_cast<double>(dim)));
  };
  RealSearchResult best = maximize(f, sampler, config);
  return {best.value, to_frame(best.point), best.restarts_used};
}

}  // namespace qldp
