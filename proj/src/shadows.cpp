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


#include "qldp/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include "parallel.hpp"
#include "qldp/table_io.hpp"

namespace qldp {

namespace {

void require_p_hat(double p_hat) {
  require(p_hat >= 0.0 && p_hat <= 1.0, ErrorCode::kInvalidInput,
          "p_hat must lie in [0, 1]");
}

double inversion_factor(double p_hat, int dim) {
  require_p_hat(p_hat);
  require(p_hat < 1.0, ErrorCode::kNoninvertibleMechanism,
          "p_hat = 1 leaves nothing to invert");
  return (dim + 1.0) / (1.0 - p_hat);
}

std::int64_t ceil_count(double x) {
  require(std::isfinite(x) && x < 9e18, ErrorCode::kInfeasible,
          "sample size is not finite");
  return static_cast<std::int64_t>(std::ceil(x));
}

std::uint32_t sample_index(const std::vector<double>& probs, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = u(rng);
  for (std::size_t b = 0; b + 1 < probs.size(); ++b) {
    if (x < probs[b]) return static_cast<std::uint32_t>(b);
    x -= probs[b];
  }
  return static_cast<std::uint32_t>(probs.size() - 1);
}

// <b| A_p(U rho U^dagger) |b> for every b.
std::vector<double> outcome_probs(const Matrix& u, const Matrix& rho,
                                  double p_hat) {
  const Eigen::Index d = rho.rows();
  const Matrix rotated = u * rho * u.adjoint();
  std::vector<double> probs(static_cast<std::size_t>(d));
  for (Eigen::Index b = 0; b < d; ++b) {
    probs[static_cast<std::size_t>(b)] =
        std::max(0.0, (1.0 - p_hat) * rotated(b, b).real() +
                          p_hat / static_cast<double>(d));
  }
  return probs;
}

}  // namespace

double private_shadow_p_hat(int dim, const PrivacyBudget& budget) {
  require(dim >= 2, ErrorCode::kInvalidInput, "dimension must be >= 2");
  const double g = budget.gamma();
  const double frac =
      (g - 1.0 + dim * budget.delta()) * (dim + 1.0) / (g + dim - 1.0);
  return std::clamp(1.0 - std::min(1.0, frac), 0.0, 1.0);
}

double effective_depolarizing_q(double p_hat, int dim) {
  require_p_hat(p_hat);
  require(dim >= 2, ErrorCode::kInvalidInput, "dimension must be >= 2");
  return 1.0 - (1.0 - p_hat) / (dim + 1.0);
}

QuantumChannel composite_shadow_channel(int qubits, double p_hat) {
  require_p_hat(p_hat);
  const auto& group = enumerate_cliffords(qubits);
  const int d = 1 << qubits;
  const Matrix eye = Matrix::Identity(d, d);
  Matrix s = Matrix::Zero(d * d, d * d);
  // N(rho) = avg sum_b Tr[rho F] E, E = U^dag|b><b|U,
  // F = U^dag A_p(|b><b|) U, and Tr[rho F] = vec(F^T)^T vec(rho).
  for (const CliffordElement& c : group) {
    const Matrix& u = c.matrix();
    for (int b = 0; b < d; ++b) {
      const Vector v = u.adjoint().col(b);
      const Matrix e = v * v.adjoint();
      const Matrix f_t =
          ((1.0 - p_hat) * e + (p_hat / d) * eye).transpose();
      const Eigen::Map<const Vector> ve(e.data(), e.size());
      const Eigen::Map<const Vector> vf(f_t.data(), f_t.size());
      s.noalias() += ve * vf.transpose();
    }
  }
  s /= static_cast<double>(group.size());
  return QuantumChannel::from_superoperator(s, d, d);
}

std::string ShadowSample::outcome_bits() const {
  const int m = qubits();
  std::string bits(static_cast<std::size_t>(m), '0');
  for (int k = 0; k < m; ++k) {
    if ((outcome >> (m - 1 - k)) & 1u) bits[static_cast<std::size_t>(k)] = '1';
  }
  return bits;
}

ShadowSample shadow_sample(const DensityMatrix& rho, double p_hat, Rng& rng) {
  require_p_hat(p_hat);
  const int m = qubits_for_dim(rho.dim());
  std::int64_t index = -1;
  std::optional<CliffordElement> u;
  if (m <= 2) {
    index = static_cast<std::int64_t>(random_clifford_index(m, rng));
    u = enumerate_cliffords(m)[static_cast<std::size_t>(index)];
  } else {
    u = random_clifford(m, rng);
  }
  const std::uint32_t b =
      sample_index(outcome_probs(u->matrix(), rho.matrix(), p_hat), rng);
  return {std::move(*u), index, b};
}

HermitianOperator snapshot_inverse(const ShadowSample& sample, double p_hat) {
  const int d = 1 << sample.qubits();
  const double x = inversion_factor(p_hat, d);
  const Vector v = sample.clifford.matrix().adjoint().col(sample.outcome);
  return HermitianOperator(x * (v * v.adjoint()) -
                           ((x - 1.0) / d) * Matrix::Identity(d, d));
}

double median_of_means(const std::vector<double>& values, int batch) {
  require(!values.empty(), ErrorCode::kInvalidInput, "no values");
  require(batch >= 1 && values.size() % static_cast<std::size_t>(batch) == 0,
          ErrorCode::kInvalidInput,
          "batch size " + std::to_string(batch) + " does not divide " +
              std::to_string(values.size()));
  const std::size_t ell = static_cast<std::size_t>(batch);
  std::vector<double> means;
  for (std::size_t start = 0; start < values.size(); start += ell) {
    double sum = 0.0;
    for (std::size_t i = start; i < start + ell; ++i) sum += values[i];
    means.push_back(sum / static_cast<double>(ell));
  }
  std::sort(means.begin(), means.end());
  const std::size_t k = means.size();
  return k % 2 == 1 ? means[k / 2] : 0.5 * (means[k / 2 - 1] + means[k / 2]);
}

double median_of_means_estimate(const std::vector<HermitianOperator>& snapshots,
                                const HermitianOperator& o, int batch) {
  std::vector<double> values;
  values.reserve(snapshots.size());
  for (const HermitianOperator& s : snapshots) {
    require(s.dim() == o.dim(), ErrorCode::kInvalidInput,
            "snapshot and observable dimensions differ");
    values.push_back((o.matrix() * s.matrix()).trace().real());
  }
  return median_of_means(values, batch);
}

std::int64_t shadow_required_samples(double tr_o2, int dim,
                                     const PrivacyBudget& budget,
                                     const AccuracyDemand& demand) {
  require(tr_o2 >= 0.0 && std::isfinite(tr_o2), ErrorCode::kInvalidInput,
          "Tr[O^2] must be >= 0");
  require(dim >= 2, ErrorCode::kInvalidInput, "dimension must be >= 2");
  const double g = budget.gamma();
  const double denom = g - 1.0 + dim * budget.delta();
  require(denom > 0.0, ErrorCode::kInfeasible,
          "eps = 0 and delta = 0: no finite sample size suffices");
  const double r = (g + dim - 1.0) / (denom * (dim + 1.0));
  const double b = demand.beta();
  return ceil_count(204.0 * tr_o2 / (b * b) * std::max(1.0, r * r) *
                    std::log(2.0 / demand.eta()));
}

std::int64_t naive_shadow_samples(double tr_o2, int dim,
                                  const PrivacyBudget& budget,
                                  const AccuracyDemand& demand) {
  require(tr_o2 >= 0.0 && std::isfinite(tr_o2), ErrorCode::kInvalidInput,
          "Tr[O^2] must be >= 0");
  require(dim >= 2, ErrorCode::kInvalidInput, "dimension must be >= 2");
  const double g = budget.gamma();
  const double denom = g - 1.0 + dim * budget.delta();
  require(denom > 0.0, ErrorCode::kInfeasible,
          "eps = 0 and delta = 0: no finite sample size suffices");
  const double r = (g + dim - 1.0) / denom;
  const double b = demand.beta();
  return ceil_count(204.0 * tr_o2 / (b * b) * r * r *
                    std::log(2.0 / demand.eta()));
}

int default_batch_size(std::int64_t n, double eta) {
  require(n >= 1, ErrorCode::kInvalidInput, "n must be >= 1");
  require(eta > 0.0 && eta < 1.0, ErrorCode::kInvalidInput,
          "eta must lie in (0, 1)");
  const auto target = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(2.0 * std::log(2.0 / eta))));
  std::int64_t best = 1;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (n % k != 0) continue;
    const auto gap = std::llabs(k - target);
    const auto best_gap = std::llabs(best - target);
    if (gap < best_gap || (gap == best_gap && k > best)) best = k;
    if (k > target && gap > best_gap) break;
  }
  return static_cast<int>(n / best);
}

std::vector<TrialResult> run_shadow_trials(const DensityMatrix& rho,
                                           const HermitianOperator& o,
                                           double p_hat,
                                           const ShadowPlan& plan) {
  require(plan.trials >= 1 && plan.n >= 1, ErrorCode::kInvalidInput,
          "trials and n must be >= 1");
  require(plan.batch >= 1 && plan.n % plan.batch == 0,
          ErrorCode::kInvalidInput, "batch size must divide n");
  require(o.dim() == rho.dim(), ErrorCode::kInvalidInput,
          "state and observable dimensions differ");
  const int m = qubits_for_dim(rho.dim());
  const int d = rho.dim();
  const double x = inversion_factor(p_hat, d);
  const double shift = (x - 1.0) * o.matrix().trace().real() / d;
  const double truth = (o.matrix() * rho.matrix()).trace().real();

  // Tr[O rho_hat] = x <b|U O U^dag|b> - (x - 1) Tr[O] / d.
  struct Entry {
    std::vector<double> cumulative;
    std::vector<double> value;
  };
  auto entry_for = [&](const Matrix& u) {
    Entry e;
    const std::vector<double> probs = outcome_probs(u, rho.matrix(), p_hat);
    const Matrix rotated = u * o.matrix() * u.adjoint();
    double acc = 0.0;
    for (int b = 0; b < d; ++b) {
      acc += probs[static_cast<std::size_t>(b)];
      e.cumulative.push_back(acc);
      e.value.push_back(x * rotated(b, b).real() - shift);
    }
    return e;
  };
  std::vector<Entry> table;
  if (m <= 2) {
    for (const CliffordElement& c : enumerate_cliffords(m)) {
      table.push_back(entry_for(c.matrix()));
    }
  }

  std::vector<TrialResult> out(static_cast<std::size_t>(plan.trials));
  detail::parallel_for(out.size(), plan.threads, [&](std::size_t t) {
    Rng rng = make_stream(plan.seed, t);
    std::uniform_int_distribution<std::size_t> pick(
        0, table.empty() ? 0 : table.size() - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> values(static_cast<std::size_t>(plan.n));
    for (double& v : values) {
      Entry fresh;
      const Entry* e;
      if (!table.empty()) {
        e = &table[pick(rng)];
      } else {
        fresh = entry_for(random_clifford(m, rng).matrix());
        e = &fresh;
      }
      const double r = u(rng) * e->cumulative.back();
      const auto it =
          std::upper_bound(e->cumulative.begin(), e->cumulative.end(), r);
      const auto b = std::min<std::size_t>(
          static_cast<std::size_t>(it - e->cumulative.begin()),
          e->value.size() - 1);
      v = e->value[b];
    }
    const double est = median_of_means(values, plan.batch);
    const double err = std::abs(est - truth);
    out[t] = {static_cast<std::int64_t>(t), plan.n, est, truth, err,
              err <= plan.beta};
  });
  return out;
}

void write_snapshots_csv(std::ostream& out,
                         const std::vector<ShadowSample>& samples) {
  CsvWriter csv(out, {"index", "clifford_index", "outcome"});
  for (std::size_t i = 0; i < samples.size(); ++i) {
    csv.row(std::vector<Cell>{static_cast<long long>(i),
                              static_cast<long long>(samples[i].clifford_index),
                              samples[i].outcome_bits()});
  }
}

}  // namespace qldp
