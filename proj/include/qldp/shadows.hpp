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


// Private classical shadows: a random Clifford rotation, depolarizing noise
// of strength p_hat, a computational-basis measurement, and the inverted
// snapshot.

#ifndef QLDP_SHADOWS_HPP_
#define QLDP_SHADOWS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qldp/estimate.hpp"

namespace qldp {

// 1 - min{1, (e^eps - 1 + d delta)(d + 1) / (e^eps + d - 1)}.
double private_shadow_p_hat(int dim, const PrivacyBudget& budget);

// q = 1 - (1 - p_hat) / (d + 1).
double effective_depolarizing_q(double p_hat, int dim);

// rho -> E_U sum_b <b|A_{p_hat}(U rho U^dagger)|b> U^dagger |b><b| U averaged
// over the enumerated Clifford group (m in {1, 2}).
QuantumChannel composite_shadow_channel(int qubits, double p_hat);

struct ShadowSample {
  CliffordElement clifford;
  // Position in enumerate_cliffords(m); -1 when the element was drawn by a
  // random generator word (m >= 3).
  std::int64_t clifford_index = -1;
  // Basis index; the leftmost qubit is the most significant bit.
  std::uint32_t outcome = 0;

  int qubits() const { return clifford.qubits(); }
  std::string outcome_bits() const;
};

ShadowSample shadow_sample(const DensityMatrix& rho, double p_hat, Rng& rng);

// x U^dagger |b><b| U - (x - 1) I / d with x = (d + 1) / (1 - p_hat).
// Throws kNoninvertibleMechanism when p_hat = 1.
HermitianOperator snapshot_inverse(const ShadowSample& sample, double p_hat);

// Median over consecutive batches of `batch` values of the batch means; the
// median of an even count is the mean of the two central values.
double median_of_means(const std::vector<double>& values, int batch);

double median_of_means_estimate(const std::vector<HermitianOperator>& snapshots,
                                const HermitianOperator& o, int batch);

// ceil((204 Tr[O^2] / beta^2)
//      max{1, ((e^eps + d - 1) / ((e^eps - 1 + d delta)(d + 1)))^2}
//      ln(2 / eta)). Throws kInfeasible when eps = delta = 0.
std::int64_t shadow_required_samples(double tr_o2, int dim,
                                     const PrivacyBudget& budget,
                                     const AccuracyDemand& demand);

// The same with the depolarizing calibration applied to the output state
// directly: factor ((e^eps + d - 1) / (e^eps - 1 + d delta))^2.
std::int64_t naive_shadow_samples(double tr_o2, int dim,
                                  const PrivacyBudget& budget,
                                  const AccuracyDemand& demand);

// Batch size for n snapshots: the number of batches K is the divisor of n
// closest to max(1, floor(2 ln(2 / eta))), ties to the larger K.
int default_batch_size(std::int64_t n, double eta);

struct ShadowPlan {
  std::int64_t trials = 0;
  std::int64_t n = 0;
  int batch = 1;
  double beta = 0.0;
  std::uint64_t seed = 0;
  int threads = 0;
};

// Trial t draws plan.n snapshots with make_stream(seed, t) and reports the
// median-of-means estimate of Tr[O rho].
std::vector<TrialResult> run_shadow_trials(const DensityMatrix& rho,
                                           const HermitianOperator& o,
                                           double p_hat, const ShadowPlan& plan);

// Header `index,clifford_index,outcome`.
void write_snapshots_csv(std::ostream& out,
                         const std::vector<ShadowSample>& samples);

}  // namespace qldp

#endif  // QLDP_SHADOWS_HPP_
