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


// Private estimation of Tr[O rho] with the Pauli-sampling mechanism, the
// sample-size calculators around it, and the estimation-to-testing
// reduction used for the lower bound.

#ifndef QLDP_ESTIMATE_HPP_
#define QLDP_ESTIMATE_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qldp/pauli.hpp"
#include "qldp/privacy.hpp"

namespace qldp {

// Additive error beta with failure probability eta.
class AccuracyDemand {
 public:
  AccuracyDemand(double beta, double eta);

  double beta() const { return beta_; }
  double eta() const { return eta_; }

 private:
  double beta_;
  double eta_;
};

// One released record: the sampled Pauli and the depolarized outcome bit
// (0 for the +1 eigenspace).
struct PrivatizedSample {
  int y = 0;
  PauliLabel pauli;
};

// Draws records from the mechanism for a fixed state. Tr[P rho] is computed
// once per term; the estimator side never sees rho.
class PauliPrivatizer {
 public:
  // q in [0, 1]; throws kDegenerateObservable when S = 0.
  PauliPrivatizer(const DensityMatrix& rho, const PauliDecomposition& decomp,
                  double q);

  // Index into decomp.terms() and the released bit.
  struct Draw {
    std::size_t term;
    int y;
  };
  Draw draw(Rng& rng) const;
  PrivatizedSample sample(Rng& rng) const;

  // Pr(Y = 0 | P = terms()[term]) = 1/2 + (1 - q)/2 Tr[P rho].
  double prob_zero(std::size_t term) const;

 private:
  const PauliDecomposition* decomp_;
  double q_;
  std::vector<double> plus_prob_;
};

PrivatizedSample privatize_sample(const DensityMatrix& rho,
                                  const PauliDecomposition& decomp, double q,
                                  Rng& rng);

// Z = (S / (1 - q)) sgn(alpha_P) (-1)^y. Throws kNoninvertibleMechanism when
// q = 1 and kInvalidInput when the label is not a term of decomp.
double sample_value(const PrivatizedSample& sample,
                    const PauliDecomposition& decomp, double q);

// Mean of sample_value over the records.
double estimate_expectation(const std::vector<PrivatizedSample>& samples,
                            const PauliDecomposition& decomp, double q);

// ceil(2 S^2 (e^eps + 1)^2 / (beta^2 (e^eps - 1 + 2 delta)^2) ln(2 / eta)).
// Throws kInfeasible when eps = delta = 0.
std::int64_t required_samples_upper(double weight, const PrivacyBudget& budget,
                                    const AccuracyDemand& demand);

// ceil(ln(1 / (4 eta (1 - eta))) e^eps (lmax - lmin)^2 /
//      (32 (e^eps - 1)^2 beta^2)).
// Stated for delta = 0, eps > 0, eta in (0, 1/4) and
// beta <= (lmax - lmin) / 4; anything else throws kOutOfRegime naming the
// failed condition.
std::int64_t required_samples_lower(double lmax, double lmin,
                                    const PrivacyBudget& budget,
                                    const AccuracyDemand& demand);

// ceil(ln(4 eta (1 - eta)) / ln(1 - 4 alpha'^2)), alpha' = 2 beta / (lmax -
// lmin). Holds for every privacy level. Needs beta < (lmax - lmin) / 2 and
// eta in (0, 1/4).
std::int64_t fidelity_lower_bound(double lmax, double lmin,
                                  const AccuracyDemand& demand);

// Private hypothesis testing between states at trace distance T with priors
// (p, 1 - p) and error probability alpha.
struct QhtBounds {
  double lower = 0.0;
  double upper = 0.0;  // already rounded up
  double c_const = 0.0;
};
QhtBounds qht_sample_bounds(double trace_dist, double epsilon, double p,
                            double alpha);

// rho0 = (1/2 + a) |max><max| + (1/2 - a) |min><min|, rho1 with the weights
// swapped, a = 2 beta / (lmax - lmin).
struct QhtReduction {
  DensityMatrix rho0;
  DensityMatrix rho1;
  double alpha_prime = 0.0;
  double threshold = 0.0;
};
QhtReduction build_qht_reduction(const HermitianOperator& o, double beta);

enum class Hypothesis { kH0, kH1 };

// H0 iff estimate >= threshold.
Hypothesis threshold_test(double estimate, const QhtReduction& reduction);

struct MeasurementEstimate {
  double estimate = 0.0;
  std::int64_t n_used = 0;
};

// (f0 - q/2) / (1 - q) for an observed frequency f0 of outcome 0.
double debiased_frequency(double f0, double q);

// Two-outcome POVM {O, I - O}, outcome bit depolarized with
// q = 2 (1 - delta) / (e^eps + 1), n from required_samples_upper with S = 1.
MeasurementEstimate measurement_operator_protocol(const HermitianOperator& o,
                                                  const DensityMatrix& rho,
                                                  const PrivacyBudget& budget,
                                                  const AccuracyDemand& demand,
                                                  Rng& rng);

struct TrialResult {
  std::int64_t trial = 0;
  std::int64_t n = 0;
  double estimate = 0.0;
  double true_value = 0.0;
  double abs_error = 0.0;
  bool within_beta = false;
};

struct CoverageSummary {
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double coverage = 0.0;
  double mean_abs_error = 0.0;
  // sqrt(p (1 - p) / trials) at the target p = 1 - eta.
  double binomial_sigma = 0.0;
};

struct TrialPlan {
  std::int64_t trials = 0;
  std::int64_t n = 0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  int threads = 0;
};

// Trial t draws plan.n records with make_stream(seed, t) and estimates.
std::vector<TrialResult> run_pauli_trials(const DensityMatrix& rho,
                                          const PauliDecomposition& decomp,
                                          double q, const TrialPlan& plan);

CoverageSummary summarize(const std::vector<TrialResult>& results, double eta);

// Header `trial,n,estimate,true_value,abs_error,within_beta`.
void write_trials_csv(std::ostream& out,
                      const std::vector<TrialResult>& results);

struct TestingError {
  double error_h0 = 0.0;
  double error_h1 = 0.0;
  double average = 0.0;
};

// Runs the estimator on plan.n records from each of rho0 and rho1 per trial
// and applies threshold_test; equal priors.
TestingError reduction_error_rate(const QhtReduction& reduction,
                                  const PauliDecomposition& decomp, double q,
                                  const TrialPlan& plan);

}  // namespace qldp

#endif  // QLDP_ESTIMATE_HPP_
