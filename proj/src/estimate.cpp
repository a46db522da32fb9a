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

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "parallel.hpp"
#include "qldp/table_io.hpp"

namespace qldp {

namespace {

std::int64_t ceil_count(double x) {
  require(std::isfinite(x) && x < 9e18, ErrorCode::kInfeasible,
          "sample size is not finite");
  return static_cast<std::int64_t>(std::ceil(x));
}

void require_q(double q) {
  require(q >= 0.0 && q <= 1.0, ErrorCode::kInvalidInput,
          "depolarizing parameter q must lie in [0, 1]");
}

void require_invertible(double q) {
  require_q(q);
  require(q < 1.0, ErrorCode::kNoninvertibleMechanism,
          "q = 1 erases the outcome; the estimator cannot be debiased");
}

std::string num(double x) { return format_number(x, 6); }

}  // namespace

AccuracyDemand::AccuracyDemand(double beta, double eta)
    : beta_(beta), eta_(eta) {
  require(std::isfinite(beta) && beta > 0.0, ErrorCode::kInvalidInput,
          "beta must be > 0");
  require(eta > 0.0 && eta < 1.0, ErrorCode::kInvalidInput,
          "eta must lie in (0, 1)");
}

PauliPrivatizer::PauliPrivatizer(const DensityMatrix& rho,
                                 const PauliDecomposition& decomp, double q)
    : decomp_(&decomp), q_(q) {
  require_q(q);
  require(rho.dim() == decomp.dim(), ErrorCode::kInvalidInput,
          "state and observable dimensions differ");
  require(decomp.weight() > 0.0, ErrorCode::kDegenerateObservable,
          "observable has zero Pauli weight (O = 0)");
  for (const PauliTerm& t : decomp.terms()) {
    const double e = (pauli_matrix(t.label).matrix() * rho.matrix())
                         .trace()
                         .real();
    plus_prob_.push_back(std::clamp(0.5 * (1.0 + e), 0.0, 1.0));
  }
}

PauliPrivatizer::Draw PauliPrivatizer::draw(Rng& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t term = decomp_->sample_term(rng);
  int y = u(rng) < plus_prob_[term] ? 0 : 1;
  if (u(rng) < 0.5 * q_) y ^= 1;
  return {term, y};
}

PrivatizedSample PauliPrivatizer::sample(Rng& rng) const {
  const Draw d = draw(rng);
  return {d.y, decomp_->terms()[d.term].label};
}

double PauliPrivatizer::prob_zero(std::size_t term) const {
  return 0.5 + (1.0 - q_) * (plus_prob_.at(term) - 0.5);
}

PrivatizedSample privatize_sample(const DensityMatrix& rho,
                                  const PauliDecomposition& decomp, double q,
                                  Rng& rng) {
  return PauliPrivatizer(rho, decomp, q).sample(rng);
}

double sample_value(const PrivatizedSample& sample,
                    const PauliDecomposition& decomp, double q) {
  require_invertible(q);
  require(sample.y == 0 || sample.y == 1, ErrorCode::kInvalidInput,
          "released bit must be 0 or 1");
  const double alpha = decomp.coefficient(sample.pauli);
  require(alpha != 0.0, ErrorCode::kInvalidInput,
          "label '" + sample.pauli.str() + "' is not a term of the observable");
  const double sign = alpha > 0.0 ? 1.0 : -1.0;
  const double x = sample.y == 0 ? 1.0 : -1.0;
  return decomp.weight() / (1.0 - q) * sign * x;
}

double estimate_expectation(const std::vector<PrivatizedSample>& samples,
                            const PauliDecomposition& decomp, double q) {
  require_invertible(q);
  require(!samples.empty(), ErrorCode::kInvalidInput, "no samples");
  double sum = 0.0;
  for (const PrivatizedSample& s : samples) sum += sample_value(s, decomp, q);
  return sum / static_cast<double>(samples.size());
}

std::int64_t required_samples_upper(double weight, const PrivacyBudget& budget,
                                    const AccuracyDemand& demand) {
  require(std::isfinite(weight) && weight >= 0.0, ErrorCode::kInvalidInput,
          "Pauli weight S must be >= 0");
  const double g = budget.gamma();
  const double denom = g - 1.0 + 2.0 * budget.delta();
  require(denom > 0.0, ErrorCode::kInfeasible,
          "eps = 0 and delta = 0: no finite sample size suffices");
  const double b = demand.beta();
  return ceil_count(2.0 * weight * weight * (g + 1.0) * (g + 1.0) /
                    (b * b * denom * denom) * std::log(2.0 / demand.eta()));
}

std::int64_t required_samples_lower(double lmax, double lmin,
                                    const PrivacyBudget& budget,
                                    const AccuracyDemand& demand) {
  const double gap = lmax - lmin;
  require(gap > 0.0, ErrorCode::kOutOfRegime,
          "lower bound needs lambda_max > lambda_min");
  require(budget.delta() == 0.0, ErrorCode::kOutOfRegime,
          "lower bound is only known for delta = 0");
  require(budget.epsilon() > 0.0, ErrorCode::kOutOfRegime,
          "lower bound needs eps > 0");
  require(demand.eta() < 0.25, ErrorCode::kOutOfRegime,
          "lower bound needs eta < 1/4, got " + num(demand.eta()));
  require(demand.beta() <= gap / 4.0, ErrorCode::kOutOfRegime,
          "lower bound needs beta <= (lambda_max - lambda_min)/4 = " +
              num(gap / 4.0) + ", got " + num(demand.beta()));
  const double g = budget.gamma();
  const double eta = demand.eta();
  const double b = demand.beta();
  return ceil_count(std::log(1.0 / (4.0 * eta * (1.0 - eta))) * g * gap * gap /
                    (32.0 * (g - 1.0) * (g - 1.0) * b * b));
}

std::int64_t fidelity_lower_bound(double lmax, double lmin,
                                  const AccuracyDemand& demand) {
  const double gap = lmax - lmin;
  require(gap > 0.0, ErrorCode::kDegenerateObservable,
          "observable is proportional to the identity");
  require(demand.eta() < 0.25, ErrorCode::kOutOfRegime,
          "fidelity bound needs eta < 1/4, got " + num(demand.eta()));
  require(demand.beta() < gap / 2.0, ErrorCode::kOutOfRegime,
          "fidelity bound needs beta < (lambda_max - lambda_min)/2 = " +
              num(gap / 2.0) + " (otherwise F(rho0, rho1) = 0)");
  const double a = 2.0 * demand.beta() / gap;
  const double eta = demand.eta();
  return ceil_count(std::log(4.0 * eta * (1.0 - eta)) /
                    std::log(1.0 - 4.0 * a * a));
}

QhtBounds qht_sample_bounds(double trace_dist, double epsilon, double p,
                            double alpha) {
  require(trace_dist > 0.0 && trace_dist <= 1.0, ErrorCode::kInvalidInput,
          "trace distance must lie in (0, 1]");
  require(std::isfinite(epsilon) && epsilon > 0.0, ErrorCode::kOutOfRegime,
          "testing bounds need eps > 0");
  require(p > 0.0 && p < 1.0, ErrorCode::kInvalidInput,
          "prior p must lie in (0, 1)");
  const double q = 1.0 - p;
  const double pq = p * q;
  require(alpha > 0.0, ErrorCode::kInvalidInput, "alpha must be > 0");
  require(alpha < pq, ErrorCode::kOutOfRegime,
          "testing bounds need alpha < p q = " + num(pq));
  const double g = std::exp(epsilon);
  const double t = trace_dist;
  const double log_ratio = std::log(pq / (alpha * (1.0 - alpha)));
  const double half = std::exp(epsilon / 2.0) - 1.0;
  QhtBounds b;
  b.c_const = std::max(log_ratio * (g + 1.0) / (epsilon * (g - 1.0)),
                       (1.0 - alpha * (1.0 - alpha) / pq) * (g + 1.0) /
                           (2.0 * half * half));
  b.lower = std::max(b.c_const / t,
                     log_ratio * g / (2.0 * (g - 1.0) * (g - 1.0) * t * t));
  const double r = (g + 1.0) / ((g - 1.0) * t);
  b.upper = std::ceil(2.0 * std::log(std::sqrt(pq) / alpha) * r * r);
  return b;
}

QhtReduction build_qht_reduction(const HermitianOperator& o, double beta) {
  const Spectrum s = dense::eigh(o.matrix());
  const int d = o.dim();
  const double lmin = s.values(0);
  const double lmax = s.values(d - 1);
  const double gap = lmax - lmin;
  require(gap > kTolHerm, ErrorCode::kDegenerateObservable,
          "observable is proportional to the identity; Tr[O rho] is known "
          "without any samples");
  require(beta > 0.0 && beta <= gap / 4.0, ErrorCode::kOutOfRegime,
          "reduction needs 0 < beta <= (lambda_max - lambda_min)/4 = " +
              num(gap / 4.0));
  const double a = 2.0 * beta / gap;
  const Matrix pmax = s.vectors.col(d - 1) * s.vectors.col(d - 1).adjoint();
  const Matrix pmin = s.vectors.col(0) * s.vectors.col(0).adjoint();
  return {DensityMatrix(Matrix((0.5 + a) * pmax + (0.5 - a) * pmin)),
          DensityMatrix(Matrix((0.5 - a) * pmax + (0.5 + a) * pmin)), a,
          0.5 * (lmax + lmin)};
}

Hypothesis threshold_test(double estimate, const QhtReduction& reduction) {
  return estimate >= reduction.threshold ? Hypothesis::kH0 : Hypothesis::kH1;
}

double debiased_frequency(double f0, double q) {
  require_invertible(q);
  return (f0 - 0.5 * q) / (1.0 - q);
}

MeasurementEstimate measurement_operator_protocol(const HermitianOperator& o,
                                                  const DensityMatrix& rho,
                                                  const PrivacyBudget& budget,
                                                  const AccuracyDemand& demand,
                                                  Rng& rng) {
  require(o.dim() == rho.dim(), ErrorCode::kInvalidInput,
          "state and effect dimensions differ");
  const RealVector ev = dense::eigvalsh(o.matrix());
  require(ev(0) >= -kTolIdentity && ev(ev.size() - 1) <= 1.0 + kTolIdentity,
          ErrorCode::kInvalidInput, "effect must satisfy 0 <= O <= I");
  const std::int64_t n = required_samples_upper(1.0, budget, demand);
  const double q = qubit_depolarizing_q(budget);
  const double p0 =
      std::clamp((o.matrix() * rho.matrix()).trace().real(), 0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::int64_t zeros = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    int y = u(rng) < p0 ? 0 : 1;
    if (u(rng) < 0.5 * q) y ^= 1;
    zeros += (y == 0);
  }
  return {debiased_frequency(static_cast<double>(zeros) / static_cast<double>(n),
                             q),
          n};
}

namespace {

// Estimate from n records without materializing them.
double run_estimator(const PauliPrivatizer& privatizer,
                     const std::vector<double>& term_scale, std::int64_t n,
                     Rng& rng) {
  double sum = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const PauliPrivatizer::Draw d = privatizer.draw(rng);
    sum += d.y == 0 ? term_scale[d.term] : -term_scale[d.term];
  }
  return sum / static_cast<double>(n);
}

std::vector<double> term_scales(const PauliDecomposition& decomp, double q) {
  std::vector<double> scale;
  for (const PauliTerm& t : decomp.terms()) {
    scale.push_back(sample_value({0, t.label}, decomp, q));
  }
  return scale;
}

void validate(const TrialPlan& plan) {
  require(plan.trials >= 1, ErrorCode::kInvalidInput, "trials must be >= 1");
  require(plan.n >= 1, ErrorCode::kInvalidInput, "n must be >= 1");
}

}  // namespace

std::vector<TrialResult> run_pauli_trials(const DensityMatrix& rho,
                                          const PauliDecomposition& decomp,
                                          double q, const TrialPlan& plan) {
  validate(plan);
  require_invertible(q);
  const PauliPrivatizer privatizer(rho, decomp, q);
  const std::vector<double> scale = term_scales(decomp, q);
  const double truth = (decomp.reconstruct() * rho.matrix()).trace().real();
  std::vector<TrialResult> out(static_cast<std::size_t>(plan.trials));
  detail::parallel_for(out.size(), plan.threads, [&](std::size_t t) {
    Rng rng = make_stream(plan.seed, t);
    const double est = run_estimator(privatizer, scale, plan.n, rng);
    const double err = std::abs(est - truth);
    out[t] = {static_cast<std::int64_t>(t), plan.n, est, truth, err,
              err <= plan.beta};
  });
  return out;
}

CoverageSummary summarize(const std::vector<TrialResult>& results,
                          double eta) {
  CoverageSummary s;
  s.trials = static_cast<std::int64_t>(results.size());
  double err = 0.0;
  for (const TrialResult& r : results) {
    s.hits += r.within_beta;
    err += r.abs_error;
  }
  if (s.trials > 0) {
    const double n = static_cast<double>(s.trials);
    s.coverage = static_cast<double>(s.hits) / n;
    s.mean_abs_error = err / n;
    s.binomial_sigma = std::sqrt((1.0 - eta) * eta / n);
  }
  return s;
}

void write_trials_csv(std::ostream& out,
                      const std::vector<TrialResult>& results) {
  CsvWriter csv(out, {"trial", "n", "estimate", "true_value", "abs_error",
                      "within_beta"});
  for (const TrialResult& r : results) {
    csv.row(std::vector<Cell>{static_cast<long long>(r.trial),
                              static_cast<long long>(r.n), r.estimate,
                              r.true_value, r.abs_error,
                              static_cast<long long>(r.within_beta)});
  }
}

TestingError reduction_error_rate(const QhtReduction& reduction,
                                  const PauliDecomposition& decomp, double q,
                                  const TrialPlan& plan) {
  validate(plan);
  require_invertible(q);
  const PauliPrivatizer under_h0(reduction.rho0, decomp, q);
  const PauliPrivatizer under_h1(reduction.rho1, decomp, q);
  const std::vector<double> scale = term_scales(decomp, q);
  std::vector<int> wrong(2 * static_cast<std::size_t>(plan.trials), 0);
  detail::parallel_for(wrong.size(), plan.threads, [&](std::size_t i) {
    Rng rng = make_stream(plan.seed, i);
    const bool h0 = i % 2 == 0;
    const double est =
        run_estimator(h0 ? under_h0 : under_h1, scale, plan.n, rng);
    const Hypothesis guess = threshold_test(est, reduction);
    wrong[i] = h0 ? guess != Hypothesis::kH0 : guess != Hypothesis::kH1;
  });
  TestingError e;
  for (std::size_t i = 0; i < wrong.size(); ++i) {
    (i % 2 == 0 ? e.error_h0 : e.error_h1) += wrong[i];
  }
  e.error_h0 /= static_cast<double>(plan.trials);
  e.error_h1 /= static_cast<double>(plan.trials);
  e.average = 0.5 * (e.error_h0 + e.error_h1);
  return e;
}

}  // namespace qldp
