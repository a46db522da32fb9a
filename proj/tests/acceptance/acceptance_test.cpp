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


// End-to-end acceptance checks. Each TEST is one criterion; the listener
// below prints a single PASS/FAIL line per criterion with its runtime.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qldp/estimate.hpp"
#include "qldp/shadows.hpp"
#include "qldp/table_io.hpp"
#include "qldp/utility.hpp"

namespace qldp {
namespace {

using Clock = std::chrono::steady_clock;

// Fails the current test if it outlives `limit_seconds`.
class RuntimeLimit {
 public:
  explicit RuntimeLimit(double limit_seconds)
      : limit_(limit_seconds), start_(Clock::now()) {}
  ~RuntimeLimit() {
    const double used =
        std::chrono::duration<double>(Clock::now() - start_).count();
    ::testing::Test::RecordProperty("seconds", format_number(used, 4));
    ::testing::Test::RecordProperty("limit", format_number(limit_, 4));
    EXPECT_LT(used, limit_) << "runtime limit exceeded";
  }

 private:
  double limit_;
  Clock::time_point start_;
};

SearchConfig restarts(int n) {
  SearchConfig s;
  s.restarts = n;
  return s;
}

Matrix random_hermitian(int d, Rng& rng) {
  const Matrix g = dense::gaussian_matrix(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

// 1. The optimal depolarizing noise meets the budget with equality and
// slightly less noise breaks it.
TEST(Acceptance, C01_OptimalNoiseExactness) {
  RuntimeLimit limit(1.0);
  for (int d : {2, 3, 4, 8}) {
    for (double eps : {0.1, 0.5, 1.0, 2.0}) {
      for (double delta : {0.0, 0.1, 0.3}) {
        const PrivacyBudget b(eps, delta);
        const double p = optimal_depolarizing_p(d, b);
        EXPECT_NEAR(depolarizing_privacy_profile(d, p, b.gamma()), delta, 1e-12);
        EXPECT_GT(depolarizing_privacy_profile(d, p - 1e-3, b.gamma()), delta);
      }
    }
  }
}

// 2. Numeric utilities of the optimal channel match the closed forms, and
// the utility curves regenerate exactly.
TEST(Acceptance, C02_OptimalUtilityReproduction) {
  RuntimeLimit limit(30.0);
  for (int d : {2, 4}) {
    for (double eps : {0.5, 1.0, 2.0}) {
      for (double delta : {0.0, 0.1, 0.3}) {
        const PrivacyBudget b(eps, delta);
        const QuantumChannel a = depolarizing(d, optimal_depolarizing_p(d, b));
        const double g = std::exp(eps);
        EXPECT_NEAR(fidelity_utility(a, restarts(64)).value,
                    (g + delta * (d - 1)) / (g + d - 1), 1e-6);
        EXPECT_NEAR(trace_utility(a, restarts(64)).value,
                    (d - 1) * (1 - delta) / (g + d - 1), 1e-6);
      }
    }
  }

  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(0.1 * i);
  const std::filesystem::path file =
      std::filesystem::temp_directory_path() / "qldp_acceptance_curve.csv";
  {
    std::ofstream out(file);
    write_utility_csv(out, utility_curve(10, {0.0, 0.1, 0.3}, grid));
  }
  std::ifstream in(file);
  const CsvTable t = parse_csv(in);
  std::filesystem::remove(file);
  ASSERT_EQ(t.rows.size(), 153u);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double g = std::exp(t.number(r, "epsilon"));
    const double delta = t.number(r, "delta");
    const double f = (g + 9.0 * delta) / (g + 9.0);
    const double tr = 9.0 * (1.0 - delta) / (g + 9.0);
    EXPECT_NEAR(t.number(r, "optimal_fidelity"), f, 1e-11 * f);
    EXPECT_NEAR(t.number(r, "optimal_trace"), tr, 1e-11 * std::max(tr, 1e-300));
  }
}

// 3. No certified private qubit channel beats the optimal utilities.
TEST(Acceptance, C03_OptimalityCeiling) {
  RuntimeLimit limit(120.0);
  const PrivacyBudget b(1.0, 0.0);
  const double e = std::exp(1.0);
  const double p_star = optimal_depolarizing_p(2, b);
  Rng rng = make_stream(303, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int accepted = 0;
  int rejected = 0;
  int attempts = 0;
  while (accepted < 50 && attempts < 400) {
    ++attempts;
    // Random channels behind or ahead of enough depolarizing noise.
    const QuantumChannel r = random_channel(2, 2, 1 + attempts % 4, rng);
    const double p = p_star + (1.0 - p_star) * unit(rng);
    QuantumChannel n = r;
    switch (attempts % 3) {
      case 0: n = compose(r, depolarizing(2, p)); break;
      case 1: n = compose(depolarizing(2, p), r); break;
      default:
        n = compose(unitary_conjugate(dense::random_unitary(2, rng)),
                    compose(depolarizing(2, 0.9 * p), r));
        break;
    }
    if (!certify_qldp(n, b, restarts(32)).satisfied) {
      ++rejected;
      continue;
    }
    ++accepted;
    EXPECT_LE(fidelity_utility(n, restarts(32)).value, e / (e + 1.0) + 1e-6);
    EXPECT_GE(trace_utility(n, restarts(32)).value, 1.0 / (e + 1.0) - 1e-6);
  }
  EXPECT_EQ(accepted, 50) << "rejected " << rejected;
  ::testing::Test::RecordProperty("rejected", rejected);
}

// 4. The Clifford twirl gives a depolarizing channel, keeps the privacy
// level and does not lower fidelity utility.
TEST(Acceptance, C04_TwirlProperties) {
  RuntimeLimit limit(60.0);
  const FiniteUnitaryGroup g = clifford_group(1);
  ASSERT_EQ(g.size(), 24u);
  const PrivacyBudget b(1.0, 0.0);
  Rng rng = make_stream(404, 0);
  for (int t = 0; t < 20; ++t) {
    const QuantumChannel n = random_channel(2, 2, 1 + t % 4, rng);
    const QuantumChannel ng = twirl(n, g);
    EXPECT_LT(fit_depolarizing(ng).residual, 1e-9);
    const double level = certify_qldp(n, b, restarts(32)).sup_estimate;
    EXPECT_LE(certify_qldp(ng, b, restarts(32)).sup_estimate, level + 1e-6);
    // A single conjugation leaves the level unchanged.
    const QuantumChannel nu =
        conjugated_channel(n, g.elements()[static_cast<std::size_t>(t) % 24]);
    EXPECT_NEAR(certify_qldp(nu, b, restarts(32)).sup_estimate, level, 1e-6);
    EXPECT_GE(fidelity_utility(ng, restarts(32)).value,
              fidelity_utility(n, restarts(32)).value - 1e-8);
  }
}

// 5. The exact mean of the Pauli-sampling estimator is the expectation.
TEST(Acceptance, C05_EstimatorUnbiasedness) {
  RuntimeLimit limit(10.0);
  Rng rng = make_stream(505, 0);
  for (int pair = 0; pair < 20; ++pair) {
    const int m = 1 + pair % 2;
    const int d = 1 << m;
    const Matrix o = random_hermitian(d, rng);
    const DensityMatrix rho = random_density(d, 1 + pair % d, rng);
    const PauliDecomposition dec = decompose(HermitianOperator(o), m);
    const double truth = (o * rho.matrix()).trace().real();
    for (double q : {0.0, 0.3, 0.8}) {
      double mean = 0.0;
      for (const PauliTerm& term : dec.terms()) {
        // Outcome law from the channel A_q o M_P.
        const Matrix out =
            compose(depolarizing(2, q),
                    pauli_measurement_channel(pauli_matrix(term.label)))
                .apply(rho.matrix());
        for (int y = 0; y < 2; ++y) {
          const double prob = std::abs(term.coeff) / dec.weight() * out(y, y).real();
          mean += prob * sample_value({y, term.label}, dec, q);
        }
      }
      EXPECT_NEAR(mean, truth, 1e-10);
    }
  }
}

// 6. Coverage of the Pauli-sampling protocol at its sufficient sample size.
TEST(Acceptance, C06_PauliProtocolCoverage) {
  RuntimeLimit limit(120.0);
  const PrivacyBudget b(1.0, 0.0);
  const AccuracyDemand a(0.1, 0.05);
  const PauliDecomposition z =
      PauliDecomposition::from_terms(1, {{PauliLabel("Z"), 1.0}});
  const std::int64_t n = required_samples_upper(z.weight(), b, a);
  ASSERT_EQ(n, 3455);
  const TrialPlan plan{.trials = 2000, .n = n, .beta = 0.1, .seed = 606};
  const CoverageSummary s = summarize(
      run_pauli_trials(DensityMatrix::basis(2, 0), z, qubit_depolarizing_q(b),
                       plan),
      a.eta());
  EXPECT_GE(s.coverage, 0.95 - 3.0 * s.binomial_sigma);
  ::testing::Test::RecordProperty("coverage", format_number(s.coverage, 6));
}

// 7. Lower and upper sample sizes are ordered and scale alike in epsilon.
TEST(Acceptance, C07_BoundOrdering) {
  RuntimeLimit limit(1.0);
  for (double beta : {0.05, 0.1}) {
    const AccuracyDemand a(beta, 0.1);
    double lo = INFINITY;
    double hi = 0.0;
    for (double eps : {0.25, 0.5, 1.0}) {
      const PrivacyBudget b(eps, 0.0);
      const std::int64_t lower = required_samples_lower(1.0, -1.0, b, a);
      const std::int64_t upper = required_samples_upper(1.0, b, a);
      EXPECT_LE(lower, upper);
      const double ratio = static_cast<double>(upper) / static_cast<double>(lower);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    EXPECT_LT(hi / lo, 2.0) << "beta " << beta;
  }
}

// 8. The averaged shadow channel is depolarizing and snapshots are
// unbiased.
TEST(Acceptance, C08_ShadowChannelIdentity) {
  RuntimeLimit limit(5.0);
  const std::vector<CliffordElement>& group = enumerate_cliffords(1);
  Rng rng = make_stream(808, 0);
  for (double p : {0.0, 0.3, 0.85}) {
    const QuantumChannel c = composite_shadow_channel(1, p);
    EXPECT_LT(channel_distance(c, depolarizing(2, 1.0 - (1.0 - p) / 3.0)), 1e-9);
    for (int t = 0; t < 4; ++t) {
      const DensityMatrix rho =
          t == 0 ? DensityMatrix::basis(2, 0) : random_density(2, 1 + t % 2, rng);
      Matrix mean = Matrix::Zero(2, 2);
      for (std::size_t i = 0; i < group.size(); ++i) {
        const Matrix& u = group[i].matrix();
        const Matrix out = depolarizing(2, p).apply(u * rho.matrix() * u.adjoint());
        for (std::uint32_t bit = 0; bit < 2; ++bit) {
          const ShadowSample s{group[i], static_cast<std::int64_t>(i), bit};
          mean += out(bit, bit).real() / 24.0 * snapshot_inverse(s, p).matrix();
        }
      }
      EXPECT_LT(dense::max_abs_diff(mean, rho.matrix()), 1e-10);
    }
  }
}

// 9. Coverage of the private shadow pipeline.
TEST(Acceptance, C09_ShadowPipelineCoverage) {
  RuntimeLimit limit(300.0);
  const PrivacyBudget b(0.5, 0.0);
  const AccuracyDemand a(0.3, 0.1);
  const double p_hat = private_shadow_p_hat(2, b);
  const double e = std::exp(0.5);
  EXPECT_NEAR(p_hat, 1.0 - std::min(1.0, (e - 1.0) * 3.0 / (e + 1.0)), 1e-12);
  const HermitianOperator z = pauli_matrix(PauliLabel("Z"));
  const std::int64_t n = shadow_required_samples(2.0, 2, b, a);
  const ShadowPlan plan{.trials = 500,
                        .n = n,
                        .batch = default_batch_size(n, a.eta()),
                        .beta = a.beta(),
                        .seed = 909};
  const CoverageSummary s = summarize(
      run_shadow_trials(DensityMatrix::basis(2, 0), z, p_hat, plan), a.eta());
  EXPECT_GE(s.coverage, 0.9 - 3.0 * s.binomial_sigma);
  ::testing::Test::RecordProperty("n", static_cast<int>(n));
  ::testing::Test::RecordProperty("coverage", format_number(s.coverage, 6));
}

// 10. Thresholding the estimator separates the two test hypotheses.
TEST(Acceptance, C10_TestingReduction) {
  RuntimeLimit limit(120.0);
  const PrivacyBudget b(1.0, 0.0);
  const AccuracyDemand a(0.1, 0.05);
  const HermitianOperator z = pauli_matrix(PauliLabel("Z"));
  const QhtReduction r = build_qht_reduction(z, a.beta());
  const PauliDecomposition dec = decompose(z, 1);
  // 1000 trials per hypothesis.
  const TrialPlan plan{.trials = 1000,
                       .n = required_samples_upper(dec.weight(), b, a),
                       .beta = a.beta(),
                       .seed = 1010};
  const TestingError err =
      reduction_error_rate(r, dec, qubit_depolarizing_q(b), plan);
  const double sigma = std::sqrt(a.eta() * (1.0 - a.eta()) / (2.0 * 1000));
  EXPECT_LE(err.average, a.eta() + 3.0 * sigma);
  ::testing::Test::RecordProperty("error", format_number(err.average, 6));
}

// One line per criterion; failure details are still shown.
class CriterionPrinter : public ::testing::EmptyTestEventListener {
 public:
  void OnTestPartResult(const ::testing::TestPartResult& r) override {
    if (r.failed()) {
      std::printf("  %s:%d: %s\n", r.file_name() ? r.file_name() : "?",
                  r.line_number(), r.summary());
    }
  }
  void OnTestEnd(const ::testing::TestInfo& info) override {
    const ::testing::TestResult& r = *info.result();
    std::string extra;
    for (int i = 0; i < r.test_property_count(); ++i) {
      const ::testing::TestProperty& p = r.GetTestProperty(i);
      extra += std::string(" ") + p.key() + "=" + p.value();
    }
    std::printf("%s %s%s\n", r.Passed() ? "PASS" : "FAIL", info.name(),
                extra.c_str());
    std::fflush(stdout);
  }
};

}  // namespace
}  // namespace qldp

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::TestEventListeners& listeners =
      ::testing::UnitTest::GetInstance()->listeners();
  delete listeners.Release(listeners.default_result_printer());
  listeners.Append(new qldp::CriterionPrinter);
  return RUN_ALL_TESTS();
}
