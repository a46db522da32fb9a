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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qldp/pauli.hpp"

namespace qldp {
namespace {

SearchConfig quick(int restarts = 16) {
  SearchConfig s;
  s.restarts = restarts;
  return s;
}

TEST(FidelityUtility, Examples) {
  EXPECT_NEAR(fidelity_utility(identity_channel(3), quick(4)).value, 1.0, 1e-12);
  for (int d : {2, 3, 4}) {
    for (double p : {0.2, 0.7, 1.0}) {
      EXPECT_NEAR(fidelity_utility(depolarizing(d, p), quick(4)).value,
                  1.0 - p * (d - 1.0) / d, 1e-9);
    }
  }
  EXPECT_NEAR(fidelity_utility(replacement_channel(
                                   3, DensityMatrix::maximally_mixed(3)),
                               quick(4))
                  .value,
              1.0 / 3.0, 1e-9);
  // Replacement by sigma: min over pure psi of <psi|sigma|psi>.
  const DensityMatrix sigma = DensityMatrix::diagonal({0.6, 0.3, 0.1});
  EXPECT_NEAR(fidelity_utility(replacement_channel(3, sigma), quick()).value, 0.1,
              1e-7);
}

TEST(TraceUtility, Examples) {
  EXPECT_NEAR(trace_utility(identity_channel(2), quick(4)).value, 0.0, 1e-12);
  EXPECT_NEAR(trace_utility(depolarizing(2, 1.0), quick(4)).value, 0.5, 1e-9);
  for (int d : {2, 3, 4}) {
    for (double p : {0.2, 0.7}) {
      EXPECT_NEAR(trace_utility(depolarizing(d, p), quick(4)).value,
                  p * (d - 1.0) / d, 1e-9);
    }
  }
}

TEST(Utility, RejectsNonSquare) {
  Rng rng = make_stream(1, 0);
  const QuantumChannel n = random_channel(2, 3, 2, rng);
  EXPECT_THROW(fidelity_utility(n), Error);
  EXPECT_THROW(trace_utility(n), Error);
}

TEST(Utility, WitnessesReproduceValues) {
  Rng rng = make_stream(2, 0);
  const QuantumChannel n = random_channel(3, 3, 2, rng);
  const UtilityReport r = utility_report(n, quick());
  const Matrix a = r.minimizer.projector();
  const Matrix b = r.maximizer.projector();
  EXPECT_NEAR(dense::fidelity(n.apply(a), a), r.fidelity_utility, 1e-8);
  EXPECT_NEAR(dense::trace_distance(n.apply(b), b), r.trace_utility, 1e-8);
  EXPECT_NEAR(r.anti_trace_utility, 1.0 - r.trace_utility, 1e-15);
}

TEST(Utility, MixedSearchAgreesWithPure) {
  Rng rng = make_stream(3, 0);
  const QuantumChannel n = random_channel(2, 2, 2, rng);
  const double pure = fidelity_utility(n, quick()).value;
  const double mixed =
      fidelity_utility(n, quick(), StateSearch::kMixedDebug).value;
  // The minimum over all states sits on a pure state.
  EXPECT_GE(mixed, pure - 1e-6);
  EXPECT_NEAR(mixed, pure, 1e-4);
}

TEST(OptimalUtility, Examples) {
  EXPECT_NEAR(optimal_fidelity_utility(2, PrivacyBudget(50.0, 0.0)), 1.0, 1e-12);
  EXPECT_NEAR(optimal_fidelity_utility(2, PrivacyBudget(std::log(3.0), 0.0)),
              0.75, 1e-12);
  EXPECT_NEAR(optimal_fidelity_utility(10, PrivacyBudget(0.0, 0.0)), 0.1, 1e-12);
  EXPECT_NEAR(optimal_trace_utility(3, PrivacyBudget(0.4, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(optimal_trace_utility(2, PrivacyBudget(std::log(3.0), 0.0)), 0.25,
              1e-12);
  EXPECT_NEAR(optimal_trace_utility(10, PrivacyBudget(1.0, 0.1)),
              9.0 * 0.9 / (std::exp(1.0) + 9.0), 1e-15);
  EXPECT_NEAR(optimal_trace_utility(10, PrivacyBudget(1.0, 0.1)), 0.691228,
              1e-6);
  for (double eps : {0.0, 1.0, 50.0}) {
    const PrivacyBudget b(eps, 0.2);
    EXPECT_EQ(postprocessed_fidelity_utility(4, b),
              optimal_fidelity_utility(4, b));
  }
  EXPECT_THROW(optimal_fidelity_utility(1, PrivacyBudget(1.0, 0.0)), Error);
}

TEST(OptimalUtility, ClosedFormsAgree) {
  for (int d : {2, 5, 100}) {
    for (double eps : {0.0, 0.3, 2.0, 7.0}) {
      for (double delta : {0.0, 0.4, 1.0}) {
        const PrivacyBudget b(eps, delta);
        const double f = optimal_fidelity_utility(d, b);
        EXPECT_NEAR(f + optimal_trace_utility(d, b), 1.0, 1e-12);
        EXPECT_NEAR(f, 1.0 - optimal_depolarizing_p(d, b) * (d - 1.0) / d,
                    1e-12);
      }
    }
  }
}

TEST(Properties, OptimalMechanismAttainsClosedForm) {
  for (int d : {2, 3}) {
    for (double eps : {0.5, 2.0}) {
      const PrivacyBudget b(eps, 0.1);
      const QuantumChannel a = depolarizing(d, optimal_depolarizing_p(d, b));
      EXPECT_NEAR(fidelity_utility(a, quick(8)).value,
                  optimal_fidelity_utility(d, b), 1e-6);
      EXPECT_NEAR(trace_utility(a, quick(8)).value, optimal_trace_utility(d, b),
                  1e-6);
    }
  }
}

TEST(Properties, DepolarizingComplementarity) {
  for (int d : {2, 4}) {
    for (double p : {0.0, 0.35, 0.9}) {
      const QuantumChannel a = depolarizing(d, p);
      EXPECT_NEAR(fidelity_utility(a, quick(4)).value +
                      trace_utility(a, quick(4)).value,
                  1.0, 1e-9);
    }
  }
}

TEST(Properties, TwirlDoesNotHurtUtility) {
  const FiniteUnitaryGroup g = clifford_group(1);
  Rng rng = make_stream(4, 0);
  for (int t = 0; t < 5; ++t) {
    const QuantumChannel n = random_channel(2, 2, 1 + t % 3, rng);
    const QuantumChannel ng = twirl(n, g);
    EXPECT_GE(fidelity_utility(ng, quick()).value,
              fidelity_utility(n, quick()).value - 1e-8);
    EXPECT_LE(trace_utility(ng, quick()).value,
              trace_utility(n, quick()).value + 1e-8);
  }
}

TEST(UtilityCurve, OrderAndTrends) {
  const std::vector<double> eps{0.0, 0.5, 1.0, 3.0};
  const std::vector<UtilityCurveRow> rows = utility_curve(10, {0.0, 0.1}, eps);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0].delta, 0.0);
  EXPECT_EQ(rows[4].delta, 0.1);
  EXPECT_NEAR(rows[0].optimal_fidelity, 0.1, 1e-12);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].delta == rows[i - 1].delta) {
      EXPECT_GE(rows[i].optimal_fidelity, rows[i - 1].optimal_fidelity);
    }
  }
  for (double e : eps) {
    double prev = 2.0;
    for (int d : {2, 10, 100}) {
      const double f = optimal_fidelity_utility(d, PrivacyBudget(e, 0.1));
      EXPECT_LE(f, prev);
      prev = f;
    }
  }
  EXPECT_THROW(utility_curve(10, {}, eps), Error);
  EXPECT_THROW(utility_curve(10, {0.0}, {}), Error);
}

TEST(UtilityCurve, CsvLayout) {
  std::ostringstream out;
  write_utility_csv(out, utility_curve(2, {0.0}, {std::log(3.0)}));
  EXPECT_EQ(out.str(),
            "epsilon,delta,optimal_fidelity,optimal_trace\n"
            "1.09861228867,0,0.75,0.25\n");
}

}  // namespace
}  // namespace qldp
