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

#include "qldp/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qldp {

PrivacyBudget::PrivacyBudget(double epsilon, double delta)
    : epsilon_(epsilon), delta_(delta), gamma_(std::exp(epsilon)) {
  require(std::isfinite(epsilon) && epsilon >= 0.0, ErrorCode::kInvalidInput,
          "epsilon must be finite and >= 0, got " + std::to_string(epsilon));
  require(delta >= 0.0 && delta <= 1.0, ErrorCode::kInvalidInput,
          "delta must lie in [0, 1], got " + std::to_string(delta));
}

double optimal_depolarizing_p(int dim, const PrivacyBudget& budget) {
  require(dim >= 2, ErrorCode::kInvalidInput, "dimension must be >= 2");
  const double p =
      dim * (1.0 - budget.delta()) / (budget.gamma() + dim - 1.0);
  return std::clamp(p, 0.0, 1.0);
}

double depolarizing_privacy_profile(int dim, double p, double gamma) {
  require(dim >= 2, ErrorCode::kInvalidInput, "dimension must be >= 2");
  require(p >= 0.0 && p <= 1.0, ErrorCode::kInvalidInput,
          "depolarizing parameter must lie in [0, 1]");
  require(gamma >= 1.0, ErrorCode::kInvalidInput, "gamma must be >= 1");
  return std::max(0.0, 1.0 - p * (dim - 1.0 + gamma) / dim);
}

double qubit_depolarizing_q(const PrivacyBudget& budget) {
  return 2.0 * (1.0 - budget.delta()) / (budget.gamma() + 1.0);
}

double pair_divergence(const QuantumChannel& channel, const PureState& first,
                       const PureState& second, double gamma) {
  return dense::hockey_stick(channel.apply(first.projector()),
                             channel.apply(second.projector()), gamma);
}

CertificationResult certify_qldp(const QuantumChannel& channel,
                                 const PrivacyBudget& budget,
                                 const SearchConfig& search) {
  validate(search);
  const int d = channel.dim_in();
  require(d >= 2, ErrorCode::kInvalidInput,
          "certification needs input dimension >= 2 (orthogonal pairs)");
  const double gamma = budget.gamma();
  const FrameObjective objective = [&](const Matrix& frame) {
    const Matrix first = frame.col(0) * frame.col(0).adjoint();
    const Matrix second = frame.col(1) * frame.col(1).adjoint();
    return dense::hockey_stick(channel.apply_fast(first),
                               channel.apply_fast(second), gamma);
  };
  const FrameSearchResult found = maximize_over_frames(d, 2, objective, search);

  CertificationResult result{
      .sup_estimate = std::clamp(found.value, 0.0, 1.0),
      .witness_first = PureState(found.frame.col(0).normalized()),
      .witness_second = PureState(found.frame.col(1).normalized()),
      .restarts_used = found.restarts_used,
  };
  result.satisfied = result.sup_estimate <= budget.delta() + kCertTol;
  result.borderline =
      std::abs(result.sup_estimate - budget.delta()) <= kCertBorderline;
  return result;
}

}  // namespace qldp
