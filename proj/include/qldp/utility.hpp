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

#ifndef QLDP_UTILITY_HPP_
#define QLDP_UTILITY_HPP_

#include <iosfwd>
#include <vector>

#include "qldp/privacy.hpp"

namespace qldp {

enum class StateSearch {
  kPure,
  // Debug only: searches over all density matrices via rho = A A^dagger / Tr.
  kMixedDebug,
};

struct UtilityEstimate {
  double value = 0.0;
  // Input state attaining `value` (pure searches); for kMixedDebug the
  // dominant eigenvector of the attaining mixed state.
  PureState witness;
  int restarts_used = 0;
};

// min over states of F(N(rho), rho). The returned value is attained by the
// witness, so it is an upper bound on the true minimum.
UtilityEstimate fidelity_utility(const QuantumChannel& channel,
                                 const SearchConfig& search = {},
                                 StateSearch mode = StateSearch::kPure);

// max over states of T(N(rho), rho); a lower bound on the true maximum.
UtilityEstimate trace_utility(const QuantumChannel& channel,
                              const SearchConfig& search = {},
                              StateSearch mode = StateSearch::kPure);

struct UtilityReport {
  double fidelity_utility = 0.0;
  double trace_utility = 0.0;
  double anti_trace_utility = 0.0;
  PureState minimizer;
  PureState maximizer;
};

UtilityReport utility_report(const QuantumChannel& channel,
                             const SearchConfig& search = {});

// Best achievable utilities over all (epsilon, delta)-private channels with
// equal input and output dimension d, attained by A_{p*}:
//   max F = (e^eps + delta (d - 1)) / (e^eps + d - 1)
//   min T = (d - 1)(1 - delta) / (e^eps + d - 1)
double optimal_fidelity_utility(int dim, const PrivacyBudget& budget);
double optimal_trace_utility(int dim, const PrivacyBudget& budget);

// Optimum when the receiver may post-process the private output with any
// channel back to the input space; equals optimal_fidelity_utility.
double postprocessed_fidelity_utility(int dim, const PrivacyBudget& budget);

struct UtilityCurveRow {
  int dim = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double optimal_fidelity = 0.0;
  double optimal_trace = 0.0;
};

// Rows ordered delta-major, epsilon-minor, following the input grids.
std::vector<UtilityCurveRow> utility_curve(int dim,
                                           const std::vector<double>& deltas,
                                           const std::vector<double>& eps_grid);

// Header `epsilon,delta,optimal_fidelity,optimal_trace`, 12 significant
// digits.
void write_utility_csv(std::ostream& out,
                       const std::vector<UtilityCurveRow>& rows);

}  // namespace qldp

#endif  // QLDP_UTILITY_HPP_
