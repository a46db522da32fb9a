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

#include "qldp/utility.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "qldp/table_io.hpp"

namespace qldp {

namespace {

void require_square_channel(const QuantumChannel& channel) {
  require(channel.dim_in() == channel.dim_out(), ErrorCode::kInvalidInput,
          "utility needs equal input and output dimensions");
}

Matrix mixed_from_parameters(const RealVector& x, int dim) {
  const Matrix a = unpack_complex(x, dim, dim);
  Matrix rho = a * a.adjoint();
  const double tr = rho.trace().real();
  if (tr <= 0.0) return Matrix::Identity(dim, dim) / static_cast<double>(dim);
  return rho / tr;
}

// Maximizes score(N(psi), psi) over pure inputs.
template <typename Score>
UtilityEstimate search_pure(const QuantumChannel& channel,
                            const SearchConfig& search, Score score) {
  require_square_channel(channel);
  const FrameObjective objective = [&](const Matrix& frame) {
    const Vector psi = frame.col(0);
    return score(channel.apply_fast(psi * psi.adjoint()), psi);
  };
  const FrameSearchResult found =
      maximize_over_frames(channel.dim_in(), 1, objective, search);
  return {found.value, PureState(found.frame.col(0).normalized()),
          found.restarts_used};
}

// Maximizes score(N(rho), rho) over all density matrices.
template <typename Score>
UtilityEstimate search_mixed(const QuantumChannel& channel,
                             const SearchConfig& search, Score score) {
  require_square_channel(channel);
  const int d = channel.dim_in();
  const RealObjective objective = [&](const RealVector& x) {
    const Matrix rho = mixed_from_parameters(x, d);
    return score(channel.apply_fast(rho), rho);
  };
  const RealSampler sampler = [d](Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    RealVector x(2 * d * d);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
    return x;
  };
  const RealSearchResult found = maximize(objective, sampler, search);
  const Spectrum s = dense::eigh(mixed_from_parameters(found.point, d));
  return {found.value, PureState(s.vectors.col(d - 1).normalized()),
          found.restarts_used};
}

double pure_fidelity(const Matrix& out, const Vector& psi) {
  return (psi.adjoint() * out * psi)(0, 0).real();
}

}  // namespace

UtilityEstimate fidelity_utility(const QuantumChannel& channel,
                                 const SearchConfig& search, StateSearch mode) {
  // F(sigma, |psi><psi|) = <psi|sigma|psi>.
  UtilityEstimate est =
      mode == StateSearch::kPure
          ? search_pure(channel, search,
                        [](const Matrix& out, const Vector& psi) {
                          return -pure_fidelity(out, psi);
                        })
          : search_mixed(channel, search,
                         [](const Matrix& out, const Matrix& rho) {
                           return -dense::fidelity(out, rho);
                         });
  est.value = std::clamp(-est.value, 0.0, 1.0);
  return est;
}

UtilityEstimate trace_utility(const QuantumChannel& channel,
                              const SearchConfig& search, StateSearch mode) {
  UtilityEstimate est =
      mode == StateSearch::kPure
          ? search_pure(channel, search,
                        [](const Matrix& out, const Vector& psi) {
                          return dense::trace_distance(out,
                                                       psi * psi.adjoint());
                        })
          : search_mixed(channel, search,
                         [](const Matrix& out, const Matrix& rho) {
                           return dense::trace_distance(out, rho);
                         });
  est.value = std::clamp(est.value, 0.0, 1.0);
  return est;
}

UtilityReport utility_report(const QuantumChannel& channel,
                             const SearchConfig& search) {
  UtilityEstimate f = fidelity_utility(channel, search);
  UtilityEstimate t = trace_utility(channel, search);
  return {f.value, t.value, 1.0 - t.value, std::move(f.witness),
          std::move(t.witness)};
}

double optimal_fidelity_utility(int dim, const PrivacyBudget& budget) {
  require(dim >= 2, ErrorCode::kInvalidInput, "dimension must be >= 2");
  const double g = budget.gamma();
  return (g + budget.delta() * (dim - 1.0)) / (g + dim - 1.0);
}

double optimal_trace_utility(int dim, const PrivacyBudget& budget) {
  require(dim >= 2, ErrorCode::kInvalidInput, "dimension must be >= 2");
  return (dim - 1.0) * (1.0 - budget.delta()) / (budget.gamma() + dim - 1.0);
}

double postprocessed_fidelity_utility(int dim, const PrivacyBudget& budget) {
  return optimal_fidelity_utility(dim, budget);
}

std::vector<UtilityCurveRow> utility_curve(int dim,
                                           const std::vector<double>& deltas,
                                           const std::vector<double>& eps_grid) {
  require(!deltas.empty() && !eps_grid.empty(), ErrorCode::kInvalidInput,
          "utility curve needs nonempty delta and epsilon grids");
  std::vector<UtilityCurveRow> rows;
  rows.reserve(deltas.size() * eps_grid.size());
  for (double delta : deltas) {
    for (double eps : eps_grid) {
      const PrivacyBudget budget(eps, delta);
      rows.push_back({dim, eps, delta, optimal_fidelity_utility(dim, budget),
                      optimal_trace_utility(dim, budget)});
    }
  }
  return rows;
}

void write_utility_csv(std::ostream& out,
                       const std::vector<UtilityCurveRow>& rows) {
  CsvWriter csv(out, {"epsilon", "delta", "optimal_fidelity", "optimal_trace"});
  for (const UtilityCurveRow& row : rows) {
    csv.row(std::vector<double>{row.epsilon, row.delta, row.optimal_fidelity, row.optimal_trace});
  }
}

}  // namespace qldp
