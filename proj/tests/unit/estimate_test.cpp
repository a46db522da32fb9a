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


#include "qldp/estimate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <sstream>
#include <string>

namespace qldp {
namespace {

// Runs fn, expects an Error with the given code and a message containing
// `fragment`.
void expect_error(const std::function<void()>& fn, ErrorCode code,
                  const std::string& fragment = "") {
  try {
    fn();
    ADD_FAILURE() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos)
        << e.what();
  }
}

HermitianOperator op(const char* label) {
  return pauli_matrix(PauliLabel(label));
}

PauliDecomposition decomp_of(const char* label, double coeff = 1.0) {
  return PauliDecomposition::from_terms(
      static_cast<int>(std::string(label).size()), {{PauliLabel(label), coeff}});
}

// Exact mean of the estimator, with Pr(Y = 0 | P) read off the channel
// A_q o M_P applied to rho.
double exact_estimator_mean(const DensityMatrix& rho,
                            const PauliDecomposition& d, double q) {
  double mean = 0.0;
  for (const PauliTerm& t : d.terms()) {
    const QuantumChannel c =
        compose(depolarizing(2, q), pauli_measurement_channel(pauli_matrix(t.label)));
    const Matrix out = c.apply(rho.matrix());
    const double p0 = out(0, 0).real();
    const double p1 = out(1, 1).real();
    const double z = d.weight() / (1.0 - q) * (t.coeff > 0 ? 1.0 : -1.0);
    mean += std::abs(t.coeff) / d.weight() * (p0 - p1) * z;
  }
  return mean;
}

TEST(AccuracyDemand, Validation) {
  EXPECT_NO_THROW(AccuracyDemand(0.1, 0.05));
  EXPECT_THROW(AccuracyDemand(0.0, 0.05), Error);
  EXPECT_THROW(AccuracyDemand(0.1, 0.0), Error);
  EXPECT_THROW(AccuracyDemand(0.1, 1.0), Error);
}

TEST(Privatize, Examples) {
  const PauliDecomposition z = decomp_of("Z");
  const DensityMatrix zero = DensityMatrix::basis(2, 0);
  Rng rng = make_stream(1, 0);
  for (int i = 0; i < 50; ++i) {
    const PrivatizedSample s = privatize_sample(zero, z, 0.0, rng);
    EXPECT_EQ(s.y, 0);
    EXPECT_EQ(s.pauli.str(), "Z");
  }
  const PauliPrivatizer mixed(DensityMatrix::maximally_mixed(2), z, 0.3);
  EXPECT_NEAR(mixed.prob_zero(0), 0.5, 1e-15);
  const PauliPrivatizer half(zero, z, 0.5);
  EXPECT_NEAR(half.prob_zero(0), 0.75, 1e-15);
  int zeros = 0;
  for (int i = 0; i < 8000; ++i) zeros += half.sample(rng).y == 0;
  // sd ~ 38.7
  EXPECT_NEAR(zeros, 6000, 160);
  expect_error([&] { PauliPrivatizer(zero, PauliDecomposition::from_terms(1, {}), 0.1); },
               ErrorCode::kDegenerateObservable);
  EXPECT_THROW(PauliPrivatizer(zero, z, 1.5), Error);
  EXPECT_THROW(PauliPrivatizer(DensityMatrix::basis(4, 0), z, 0.1), Error);
}

TEST(Privatize, ProbabilityMatchesChannel) {
  Rng rng = make_stream(2, 0);
  for (int m = 1; m <= 2; ++m) {
    const DensityMatrix rho = random_density(1 << m, 2, rng);
    const Matrix g = dense::gaussian_matrix(1 << m, 1 << m, rng);
    const PauliDecomposition d =
        decompose(HermitianOperator(Matrix((g + g.adjoint()) / 2.0)), m);
    for (double q : {0.0, 0.4}) {
      const PauliPrivatizer pv(rho, d, q);
      for (std::size_t i = 0; i < d.terms().size(); ++i) {
        const QuantumChannel c = compose(
            depolarizing(2, q),
            pauli_measurement_channel(pauli_matrix(d.terms()[i].label)));
        EXPECT_NEAR(pv.prob_zero(i), c.apply(rho.matrix())(0, 0).real(), 1e-12);
      }
    }
  }
}

TEST(Estimator, Examples) {
  const PauliDecomposition z = decomp_of("Z");
  const std::vector<PrivatizedSample> ones(5, {0, PauliLabel("Z")});
  EXPECT_NEAR(estimate_expectation(ones, z, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(sample_value({1, PauliLabel("Z")}, z, 0.5), -2.0, 1e-15);
  EXPECT_NEAR(exact_estimator_mean(DensityMatrix::diagonal({0.8, 0.2}), z, 0.5),
              0.6, 1e-12);
  const PauliDecomposition neg = decomp_of("X", -0.5);
  EXPECT_NEAR(sample_value({0, PauliLabel("X")}, neg, 0.0), -0.5, 1e-15);
  expect_error([&] { sample_value({0, PauliLabel("Z")}, z, 1.0); },
               ErrorCode::kNoninvertibleMechanism);
  expect_error([&] { sample_value({0, PauliLabel("X")}, z, 0.1); },
               ErrorCode::kInvalidInput);
  EXPECT_THROW(estimate_expectation({}, z, 0.1), Error);
}

TEST(Properties, EstimatorIsUnbiased) {
  Rng rng = make_stream(3, 0);
  for (int m = 1; m <= 2; ++m) {
    const int d = 1 << m;
    for (int t = 0; t < 5; ++t) {
      const Matrix g = dense::gaussian_matrix(d, d, rng);
      const Matrix o = (g + g.adjoint()) / 2.0;
      const PauliDecomposition dec = decompose(HermitianOperator(o), m);
      const DensityMatrix rho = random_density(d, 1 + t % d, rng);
      const double truth = (o * rho.matrix()).trace().real();
      for (double q : {0.0, 0.3, 0.8}) {
        EXPECT_NEAR(exact_estimator_mean(rho, dec, q), truth, 1e-10);
      }
    }
  }
}

TEST(UpperBound, Examples) {
  const AccuracyDemand demand(0.1, 0.05);
  EXPECT_EQ(required_samples_upper(1.0, PrivacyBudget(1.0, 0.0), demand), 3455);
  const double e = std::exp(1.0);
  const double raw = 2.0 * std::pow((e + 1.0) / (0.1 * (e - 1.0)), 2) *
                     std::log(2.0 / 0.05);
  EXPECT_EQ(required_samples_upper(1.0, PrivacyBudget(1.0, 0.0), demand),
            static_cast<std::int64_t>(std::ceil(raw)));
  EXPECT_EQ(required_samples_upper(2.0, PrivacyBudget(1.0, 0.0), demand),
            static_cast<std::int64_t>(std::ceil(4.0 * raw)));
  EXPECT_EQ(required_samples_upper(1.5, PrivacyBudget(0.7, 1.0), demand),
            static_cast<std::int64_t>(
                std::ceil(2.0 * 2.25 * std::log(40.0) / 0.01)));
  expect_error(
      [&] { required_samples_upper(1.0, PrivacyBudget(0.0, 0.0), demand); },
      ErrorCode::kInfeasible);
}

TEST(LowerBound, Examples) {
  EXPECT_EQ(required_samples_lower(1.0, -1.0, PrivacyBudget(1.0, 0.0),
                                   AccuracyDemand(0.1, 0.1)),
            12);
  // Near eta = 1/4 the log factor tends to ln(4/3).
  const double eps = 1.0;
  const double e = std::exp(eps);
  const std::int64_t near = required_samples_lower(
      1.0, -1.0, PrivacyBudget(eps, 0.0), AccuracyDemand(0.01, 0.2499999));
  const double expected =
      std::log(1.0 / 0.75) * e * 4.0 / (32.0 * (e - 1.0) * (e - 1.0) * 1e-4);
  EXPECT_GT(near, 0);
  EXPECT_NEAR(static_cast<double>(near), std::ceil(expected), 1.0);

  const PrivacyBudget b(1.0, 0.0);
  expect_error([&] { required_samples_lower(1, 1, b, AccuracyDemand(0.1, 0.1)); },
               ErrorCode::kOutOfRegime, "lambda_max > lambda_min");
  expect_error([&] { required_samples_lower(1, -1, PrivacyBudget(1.0, 0.1),
                                            AccuracyDemand(0.1, 0.1)); },
               ErrorCode::kOutOfRegime, "delta");
  expect_error([&] { required_samples_lower(1, -1, PrivacyBudget(0.0, 0.0),
                                            AccuracyDemand(0.1, 0.1)); },
               ErrorCode::kOutOfRegime, "eps > 0");
  expect_error([&] { required_samples_lower(1, -1, b, AccuracyDemand(0.1, 0.3)); },
               ErrorCode::kOutOfRegime, "eta");
  expect_error([&] { required_samples_lower(1, -1, b, AccuracyDemand(0.6, 0.1)); },
               ErrorCode::kOutOfRegime, "beta");
}

TEST(Properties, LowerBelowUpper) {
  for (double eps : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    for (double beta : {0.01, 0.05, 0.1, 0.5}) {
      for (double eta : {0.01, 0.05, 0.2}) {
        for (double gap : {2.0, 5.0}) {
          const PrivacyBudget b(eps, 0.0);
          const AccuracyDemand a(beta, eta);
          EXPECT_LE(required_samples_lower(gap / 2, -gap / 2, b, a),
                    required_samples_upper(gap / 2, b, a));
        }
      }
    }
  }
}

TEST(FidelityBound, Examples) {
  EXPECT_EQ(fidelity_lower_bound(1.0, -1.0, AccuracyDemand(0.1, 0.1)), 26);
  EXPECT_EQ(fidelity_lower_bound(1.0, -1.0, AccuracyDemand(0.1, 0.1)),
            static_cast<std::int64_t>(
                std::ceil(std::log(0.36) / std::log(0.96))));
  expect_error([] { fidelity_lower_bound(1.0, -1.0, AccuracyDemand(1.0, 0.1)); },
               ErrorCode::kOutOfRegime);
  expect_error([] { fidelity_lower_bound(1.0, -1.0, AccuracyDemand(0.1, 0.25)); },
               ErrorCode::kOutOfRegime);
  expect_error([] { fidelity_lower_bound(1.0, 1.0, AccuracyDemand(0.1, 0.1)); },
               ErrorCode::kDegenerateObservable);
}

TEST(Qht, Examples) {
  const QhtBounds b = qht_sample_bounds(1.0, 1.0, 0.5, 0.05);
  EXPECT_EQ(b.upper, 22.0);
  const QhtBounds h = qht_sample_bounds(0.5, 1.0, 0.5, 0.05);
  const double e = std::exp(1.0);
  const double raw = 2.0 * std::log(0.5 / 0.05) * std::pow((e + 1.0) / (e - 1.0), 2);
  EXPECT_EQ(b.upper, std::ceil(raw));
  EXPECT_EQ(h.upper, std::ceil(4.0 * raw));
  expect_error([] { qht_sample_bounds(1.0, 1.0, 0.5, 0.25); },
               ErrorCode::kOutOfRegime);
  EXPECT_THROW(qht_sample_bounds(1.5, 1.0, 0.5, 0.05), Error);
  EXPECT_THROW(qht_sample_bounds(1.0, 0.0, 0.5, 0.05), Error);
  EXPECT_THROW(qht_sample_bounds(1.0, 1.0, 1.0, 0.05), Error);
}

TEST(Properties, QhtLowerBelowUpper) {
  for (double p : {0.5, 0.3, 0.1}) {
    const double pq = p * (1.0 - p);
    for (int ei = 1; ei <= 20; ++ei) {
      for (int ti = 1; ti <= 10; ++ti) {
        const QhtBounds b = qht_sample_bounds(ti / 10.0, ei / 10.0, p, pq / 2.0);
        EXPECT_LE(b.lower, b.upper) << "p=" << p << " eps=" << ei / 10.0
                                    << " T=" << ti / 10.0;
        EXPECT_GT(b.c_const, 0.0);
      }
    }
  }
}

TEST(Reduction, Examples) {
  const QhtReduction r = build_qht_reduction(op("Z"), 0.25);
  EXPECT_NEAR(r.alpha_prime, 0.25, 1e-15);
  EXPECT_LT(dense::max_abs_diff(r.rho0.matrix(),
                                DensityMatrix::diagonal({0.75, 0.25}).matrix()),
            1e-12);
  EXPECT_LT(dense::max_abs_diff(r.rho1.matrix(),
                                DensityMatrix::diagonal({0.25, 0.75}).matrix()),
            1e-12);
  EXPECT_NEAR(trace_distance(r.rho0, r.rho1), 0.5, 1e-12);
  EXPECT_NEAR(r.threshold, 0.0, 1e-15);
  expect_error([] { build_qht_reduction(HermitianOperator(Matrix::Identity(2, 2)), 0.1); },
               ErrorCode::kDegenerateObservable);
  expect_error([] { build_qht_reduction(op("Z"), 0.6); }, ErrorCode::kOutOfRegime);
}

TEST(Properties, ReductionInvariants) {
  Rng rng = make_stream(4, 0);
  for (int d : {2, 3, 4}) {
    for (int t = 0; t < 3; ++t) {
      const Matrix g = dense::gaussian_matrix(d, d, rng);
      const Matrix o = (g + g.adjoint()) / 2.0;
      const RealVector ev = dense::eigvalsh(o);
      const double gap = ev(d - 1) - ev(0);
      const double beta = gap / (5.0 + t);
      const QhtReduction r = build_qht_reduction(HermitianOperator(o), beta);
      EXPECT_NEAR(trace_distance(r.rho0, r.rho1), 2.0 * r.alpha_prime, 1e-9);
      EXPECT_NEAR(((o * r.rho0.matrix()).trace() - (o * r.rho1.matrix()).trace())
                      .real(),
                  4.0 * beta, 1e-9);
      EXPECT_NEAR(r.threshold, (ev(d - 1) + ev(0)) / 2.0, 1e-9);
      EXPECT_GT(r.alpha_prime, 0.0);
      EXPECT_LT(r.alpha_prime, 0.5);
    }
  }
}

TEST(Reduction, ThresholdTest) {
  const QhtReduction r = build_qht_reduction(op("Z"), 0.1);
  EXPECT_EQ(threshold_test(r.threshold, r), Hypothesis::kH0);
  EXPECT_EQ(threshold_test(r.threshold + 1.0, r), Hypothesis::kH0);
  EXPECT_EQ(threshold_test(r.threshold - 1.0, r), Hypothesis::kH1);
}

TEST(Reduction, ErrorRateIsSmall) {
  const QhtReduction r = build_qht_reduction(op("Z"), 0.1);
  const double q = qubit_depolarizing_q(PrivacyBudget(1.0, 0.0));
  TrialPlan plan{.trials = 200, .n = 3455, .beta = 0.1, .seed = 5, .threads = 1};
  const TestingError err = reduction_error_rate(r, decomp_of("Z"), q, plan);
  EXPECT_NEAR(err.average, (err.error_h0 + err.error_h1) / 2.0, 1e-15);
  EXPECT_LE(err.average, 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 200));
}

TEST(Measurement, Examples) {
  EXPECT_NEAR(debiased_frequency(0.75, 0.5), 1.0, 1e-15);
  EXPECT_NEAR(debiased_frequency(0.25, 0.5), 0.0, 1e-15);
  EXPECT_THROW(debiased_frequency(0.5, 1.0), Error);

  Rng rng = make_stream(6, 0);
  const AccuracyDemand demand(0.1, 0.05);
  // No noise when delta = 1, so a deterministic outcome is recovered exactly.
  const HermitianOperator proj(DensityMatrix::basis(2, 0).matrix());
  const MeasurementEstimate exact = measurement_operator_protocol(
      proj, DensityMatrix::basis(2, 0), PrivacyBudget(1.0, 1.0), demand, rng);
  EXPECT_EQ(exact.estimate, 1.0);
  EXPECT_EQ(exact.n_used, required_samples_upper(1.0, PrivacyBudget(1.0, 1.0),
                                                 demand));
  const MeasurementEstimate id = measurement_operator_protocol(
      HermitianOperator(Matrix::Identity(2, 2)), random_density(2, 2, rng),
      PrivacyBudget(1.0, 1.0), demand, rng);
  EXPECT_EQ(id.estimate, 1.0);

  const MeasurementEstimate noisy = measurement_operator_protocol(
      proj, DensityMatrix::diagonal({0.8, 0.2}), PrivacyBudget(1.0, 0.0), demand,
      rng);
  EXPECT_EQ(noisy.n_used, 3455);
  EXPECT_NEAR(noisy.estimate, 0.8, 0.1);

  EXPECT_THROW(measurement_operator_protocol(op("Z"), DensityMatrix::basis(2, 0),
                                             PrivacyBudget(1.0, 0.0), demand, rng),
               Error);
}

TEST(Properties, MeasurementDebiasIsExact) {
  // Exact mean of the debiased frequency through the channel A_q o M_O.
  Rng rng = make_stream(7, 0);
  for (double q : {0.0, 0.5, 0.9}) {
    for (int t = 0; t < 4; ++t) {
      const DensityMatrix rho = t == 0 ? DensityMatrix::diagonal({0.8, 0.2})
                                       : random_density(2, 2, rng);
      const Matrix u = dense::random_unitary(2, rng);
      const Matrix e =
          t == 0 ? DensityMatrix::basis(2, 0).matrix()
                 : Matrix(u * DensityMatrix::diagonal({0.3, 0.7}).matrix() *
                          u.adjoint() * (1.0 - 0.2 * t));
      const QuantumChannel c = compose(
          depolarizing(2, q), binary_measurement_channel(HermitianOperator(e)));
      const double f0 = c.apply(rho.matrix())(0, 0).real();
      EXPECT_NEAR(debiased_frequency(f0, q), (e * rho.matrix()).trace().real(),
                  1e-12);
    }
  }
}

TEST(Trials, CoverageAndDeterminism) {
  const PauliDecomposition z = decomp_of("Z");
  const double q = qubit_depolarizing_q(PrivacyBudget(1.0, 0.0));
  TrialPlan plan{.trials = 300, .n = 3455, .beta = 0.1, .seed = 8, .threads = 2};
  const std::vector<TrialResult> a =
      run_pauli_trials(DensityMatrix::basis(2, 0), z, q, plan);
  plan.threads = 1;
  const std::vector<TrialResult> b =
      run_pauli_trials(DensityMatrix::basis(2, 0), z, q, plan);
  ASSERT_EQ(a.size(), 300u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].trial, static_cast<std::int64_t>(i));
    EXPECT_EQ(a[i].estimate, b[i].estimate);
    EXPECT_EQ(a[i].true_value, 1.0);
  }
  const CoverageSummary s = summarize(a, 0.05);
  EXPECT_EQ(s.trials, 300);
  EXPECT_NEAR(s.binomial_sigma, std::sqrt(0.05 * 0.95 / 300), 1e-15);
  EXPECT_GE(s.coverage, 0.95 - 3.0 * s.binomial_sigma);

  std::ostringstream out;
  write_trials_csv(out, {a[0]});
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "trial,n,estimate,true_value,abs_error,within_beta");
}

}  // namespace
}  // namespace qldp
