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

// Quantum local differential privacy: a channel N is (epsilon, delta)-private
// iff sup over orthogonal pure states phi1, phi2 of
// E_{e^epsilon}(N(phi1) || N(phi2)) is at most delta.

#ifndef QLDP_PRIVACY_HPP_
#define QLDP_PRIVACY_HPP_

#include "qldp/channels.hpp"
#include "qldp/search.hpp"

namespace qldp {

class PrivacyBudget {
 public:
  // epsilon >= 0 (finite), delta in [0, 1].
  PrivacyBudget(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  double gamma() const { return gamma_; }

 private:
  double epsilon_;
  double delta_;
  double gamma_;
};

// Separates a satisfied certification from a violated one.
inline constexpr double kCertTol = 1e-7;
// Results within this distance of delta are flagged as borderline.
inline constexpr double kCertBorderline = 1e-6;

// p* = d (1 - delta) / (e^epsilon + d - 1): the smallest depolarizing
// strength meeting the budget.
double optimal_depolarizing_p(int dim, const PrivacyBudget& budget);

// sup over orthogonal pure pairs of E_gamma(A_p(phi1) || A_p(phi2))
// = (1 - p (d - 1 + gamma) / d)_+.
double depolarizing_privacy_profile(int dim, double p, double gamma);

// q = 2 (1 - delta) / (e^epsilon + 1), the qubit case of p*.
double qubit_depolarizing_q(const PrivacyBudget& budget);

struct CertificationResult {
  double sup_estimate = 0.0;
  PureState witness_first;
  PureState witness_second;
  int restarts_used = 0;
  bool satisfied = false;
  bool borderline = false;
};

// E_gamma(N(phi1) || N(phi2)) for a pair of input pure states.
double pair_divergence(const QuantumChannel& channel, const PureState& first,
                       const PureState& second, double gamma);

// Numerical certificate: the largest E_{e^epsilon} found over orthogonal
// pure input pairs. sup_estimate is attained by the witness pair, hence a
// lower bound on the true supremum; no global optimality is claimed.
CertificationResult certify_qldp(const QuantumChannel& channel,
                                 const PrivacyBudget& budget,
                                 const SearchConfig& search = {});

}  // namespace qldp

#endif  // QLDP_PRIVACY_HPP_
