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


#include "qldp/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "qldp/cli/svg_plot.hpp"
#include "qldp/shadows.hpp"
#include "qldp/table_io.hpp"
#include "qldp/utility.hpp"

namespace qldp::cli {

namespace {

namespace fs = std::filesystem;

std::string num(double v) { return format_number(v); }

std::string state_text(const PureState& psi) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    const Complex a = psi.amplitudes()(i);
    if (i) s += ", ";
    s += format_number(a.real(), 8);
    s += a.imag() < 0 ? "-" : "+";
    s += format_number(std::abs(a.imag()), 8) + "i";
  }
  return s + "]";
}

fs::path prepare_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec && fs::is_directory(dir), ErrorCode::kIo,
          "cannot create output directory '" + dir + "'");
  return fs::path(dir);
}

void write_file(const fs::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path);
  require(static_cast<bool>(f), ErrorCode::kIo,
          "cannot write '" + path.string() + "'");
  body(f);
  f.flush();
  require(static_cast<bool>(f), ErrorCode::kIo,
          "error writing '" + path.string() + "'");
}

void require_trials(const ExperimentConfig& cfg) {
  require(cfg.trials >= 1, ErrorCode::kInvalidInput, "trials must be >= 1");
  require(cfg.n >= 0, ErrorCode::kInvalidInput, "n must be >= 0");
}

int coverage_exit(const CoverageSummary& s, double eta) {
  return s.coverage >= 1.0 - eta - 3.0 * s.binomial_sigma ? kExitOk
                                                          : kExitFailed;
}

void print_coverage(std::ostream& out, const CoverageSummary& s, double eta) {
  out << "trials: " << s.trials << "\n"
      << "coverage: " << num(s.coverage) << "\n"
      << "coverage_target: " << num(1.0 - eta) << " (3 sigma slack "
      << num(3.0 * s.binomial_sigma) << ")\n"
      << "mean_abs_error: " << num(s.mean_abs_error) << "\n"
      << "verdict: "
      << (coverage_exit(s, eta) == kExitOk ? "pass" : "fail") << "\n";
}

}  // namespace

int cmd_utility_curve(const ExperimentConfig& cfg, std::ostream& out) {
  require(!cfg.eps_grid.empty(), ErrorCode::kInvalidInput,
          "eps_grid is empty");
  require(!cfg.deltas.empty(), ErrorCode::kInvalidInput, "deltas is empty");
  require(!cfg.dims.empty(), ErrorCode::kInvalidInput, "dims is empty");
  require(cfg.dim >= 2, ErrorCode::kInvalidInput, "dim must be >= 2");
  for (int d : cfg.dims) {
    require(d >= 2, ErrorCode::kInvalidInput, "every entry of dims must be >= 2");
  }
  // Throws on any invalid (eps, delta) before a file is touched.
  const auto by_delta = utility_curve(cfg.dim, cfg.deltas, cfg.eps_grid);
  std::vector<std::vector<UtilityCurveRow>> by_dim;
  for (int d : cfg.dims) {
    by_dim.push_back(utility_curve(d, {cfg.panel_delta}, cfg.eps_grid));
  }

  const fs::path dir = prepare_output_dir(cfg.output_dir);
  write_file(dir / "utility_curve.csv",
             [&](std::ostream& f) { write_utility_csv(f, by_delta); });
  write_file(dir / "utility_curve_by_dim.csv", [&](std::ostream& f) {
    CsvWriter csv(f, {"dim", "epsilon", "delta", "optimal_fidelity",
                      "optimal_trace"});
    for (const auto& rows : by_dim) {
      for (const UtilityCurveRow& r : rows) {
        csv.row(std::vector<Cell>{static_cast<long long>(r.dim), r.epsilon,
                                  r.delta, r.optimal_fidelity,
                                  r.optimal_trace});
      }
    }
  });

  std::vector<Series> delta_series;
  const std::size_t ne = cfg.eps_grid.size();
  for (std::size_t k = 0; k < cfg.deltas.size(); ++k) {
    Series s{"delta = " + format_number(cfg.deltas[k], 6), {}, {}};
    for (std::size_t i = 0; i < ne; ++i) {
      s.x.push_back(by_delta[k * ne + i].epsilon);
      s.y.push_back(by_delta[k * ne + i].optimal_fidelity);
    }
    delta_series.push_back(std::move(s));
  }
  write_file(dir / "utility_by_delta.svg", [&](std::ostream& f) {
    write_line_chart(f,
                     {"Optimal fidelity utility, d = " + std::to_string(cfg.dim),
                      "epsilon", "fidelity"},
                     delta_series);
  });
  std::vector<Series> dim_series;
  for (const auto& rows : by_dim) {
    Series s{"d = " + std::to_string(rows.front().dim), {}, {}};
    for (const UtilityCurveRow& r : rows) {
      s.x.push_back(r.epsilon);
      s.y.push_back(r.optimal_fidelity);
    }
    dim_series.push_back(std::move(s));
  }
  write_file(dir / "utility_by_dim.svg", [&](std::ostream& f) {
    write_line_chart(f,
                     {"Optimal fidelity utility, delta = " +
                          format_number(cfg.panel_delta, 6),
                      "epsilon", "fidelity"},
                     dim_series);
  });

  out << "rows: " << by_delta.size() << "\n"
      << "wrote: " << (dir / "utility_curve.csv").string() << "\n"
      << "wrote: " << (dir / "utility_curve_by_dim.csv").string() << "\n"
      << "wrote: " << (dir / "utility_by_delta.svg").string() << "\n"
      << "wrote: " << (dir / "utility_by_dim.svg").string() << "\n";
  return kExitOk;
}

int cmd_certify(const ExperimentConfig& cfg, std::ostream& out) {
  const PrivacyBudget budget(cfg.epsilon, cfg.delta);
  const SearchConfig search = search_config(cfg);
  const QuantumChannel channel = parse_channel(cfg.channel);
  const CertificationResult r = certify_qldp(channel, budget, search);
  out << "channel: " << cfg.channel << "\n"
      << "epsilon: " << num(budget.epsilon()) << "\n"
      << "delta: " << num(budget.delta()) << "\n"
      << "sup_estimate: " << num(r.sup_estimate) << "\n"
      << "witness_first: " << state_text(r.witness_first) << "\n"
      << "witness_second: " << state_text(r.witness_second) << "\n"
      << "restarts: " << r.restarts_used << "\n"
      << "verdict: " << (r.satisfied ? "satisfied" : "violated")
      << (r.borderline ? " (borderline)" : "") << "\n";
  return r.satisfied ? kExitOk : kExitFailed;
}

int cmd_estimate(const ExperimentConfig& cfg, std::ostream& out) {
  require_trials(cfg);
  const PrivacyBudget budget(cfg.epsilon, cfg.delta);
  const AccuracyDemand demand(cfg.beta, cfg.eta);
  const HermitianOperator o = parse_observable(cfg.observable, cfg.qubits);
  const DensityMatrix rho = parse_state(cfg.state, o.dim());
  const PauliDecomposition decomp = decompose(o, cfg.qubits);
  require(decomp.weight() > 0.0, ErrorCode::kDegenerateObservable,
          "observable is zero");
  const std::int64_t n_upper =
      required_samples_upper(decomp.weight(), budget, demand);
  std::string n_lower;
  try {
    n_lower = std::to_string(required_samples_lower(
        decomp.lambda_max(), decomp.lambda_min(), budget, demand));
  } catch (const Error& e) {
    n_lower = std::string("unavailable (") + e.what() + ")";
  }
  std::string n_fid;
  try {
    n_fid = std::to_string(
        fidelity_lower_bound(decomp.lambda_max(), decomp.lambda_min(), demand));
  } catch (const Error& e) {
    n_fid = std::string("unavailable (") + e.what() + ")";
  }
  const double q = qubit_depolarizing_q(budget);
  const std::int64_t n = cfg.n > 0 ? cfg.n : n_upper;
  const TrialPlan plan{cfg.trials, n, cfg.beta, cfg.seed, cfg.threads};

  const fs::path dir = prepare_output_dir(cfg.output_dir);
  const auto results = run_pauli_trials(rho, decomp, q, plan);
  write_file(dir / "estimate_trials.csv",
             [&](std::ostream& f) { write_trials_csv(f, results); });
  const CoverageSummary s = summarize(results, cfg.eta);
  out << "pauli_weight: " << num(decomp.weight()) << "\n"
      << "q: " << num(q) << "\n"
      << "n_upper: " << n_upper << "\n"
      << "n_lower: " << n_lower << "\n"
      << "n_fidelity_lower: " << n_fid << "\n"
      << "n_used: " << n << "\n"
      << "true_value: " << num(results.front().true_value) << "\n";
  print_coverage(out, s, cfg.eta);
  out << "wrote: " << (dir / "estimate_trials.csv").string() << "\n";
  return coverage_exit(s, cfg.eta);
}

int cmd_shadows(const ExperimentConfig& cfg, std::ostream& out) {
  require_trials(cfg);
  require(cfg.qubits >= 1 && cfg.qubits <= kMaxQubits,
          ErrorCode::kInvalidInput, "shadows support 1 to 4 qubits");
  require(cfg.snapshots >= 0, ErrorCode::kInvalidInput,
          "snapshots must be >= 0");
  const PrivacyBudget budget(cfg.epsilon, cfg.delta);
  const AccuracyDemand demand(cfg.beta, cfg.eta);
  const HermitianOperator o = parse_observable(cfg.observable, cfg.qubits);
  const DensityMatrix rho = parse_state(cfg.state, o.dim());
  const int d = o.dim();
  const double tr_o2 = (o.matrix() * o.matrix()).trace().real();
  const std::int64_t n_required =
      shadow_required_samples(tr_o2, d, budget, demand);
  const double p_hat = private_shadow_p_hat(d, budget);
  const double q_eff = effective_depolarizing_q(p_hat, d);
  const std::int64_t n = cfg.n > 0 ? cfg.n : n_required;
  const int batch = cfg.batch > 0 ? cfg.batch : default_batch_size(n, cfg.eta);
  require(n % batch == 0, ErrorCode::kInvalidInput,
          "batch " + std::to_string(batch) + " does not divide n = " +
              std::to_string(n));
  const ShadowPlan plan{cfg.trials, n, batch, cfg.beta, cfg.seed, cfg.threads};

  const fs::path dir = prepare_output_dir(cfg.output_dir);
  const auto results = run_shadow_trials(rho, o, p_hat, plan);
  write_file(dir / "shadow_trials.csv",
             [&](std::ostream& f) { write_trials_csv(f, results); });
  if (cfg.snapshots > 0) {
    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(cfg.trials));
    std::vector<ShadowSample> samples;
    for (std::int64_t i = 0; i < cfg.snapshots; ++i) {
      samples.push_back(shadow_sample(rho, p_hat, rng));
    }
    write_file(dir / "snapshots.csv",
               [&](std::ostream& f) { write_snapshots_csv(f, samples); });
  }
  const CoverageSummary s = summarize(results, cfg.eta);
  out << "p_hat: " << num(p_hat) << "\n"
      << "effective_q: " << num(q_eff) << "\n"
      << "n_required: " << n_required << "\n"
      << "n_naive: " << naive_shadow_samples(tr_o2, d, budget, demand) << "\n"
      << "n_used: " << n << "\n"
      << "batch: " << batch << "\n"
      << "batches: " << n / batch << "\n"
      << "true_value: " << num(results.front().true_value) << "\n";
  print_coverage(out, s, cfg.eta);
  out << "wrote: " << (dir / "shadow_trials.csv").string() << "\n";
  return coverage_exit(s, cfg.eta);
}

int cmd_cost_report(const ExperimentConfig& cfg, std::ostream& out) {
  require(cfg.qubits >= 1 && cfg.qubits <= 30, ErrorCode::kInvalidInput,
          "qubits must lie in [1, 30]");
  require(cfg.precision_bits >= 1, ErrorCode::kInvalidInput,
          "precision_bits must be >= 1");
  const long long m = cfg.qubits;
  const long long d = 1LL << m;
  CsvWriter csv(out, {"protocol", "channel", "classical_bits",
                      "complex_entries", "qubits"});
  csv.row(std::vector<Cell>{std::string("pauli"), std::string("classical"),
                            2 * m + 1, 0LL, 0LL});
  csv.row(std::vector<Cell>{std::string("shadow"), std::string("classical"),
                            d * d * 2 * cfg.precision_bits, d * d, 0LL});
  csv.row(std::vector<Cell>{std::string("depolarized_state"),
                            std::string("quantum"), 0LL, 0LL, m});
  return kExitOk;
}

int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out) {
  require(!cfg.eps_values.empty() && !cfg.betas.empty(),
          ErrorCode::kInvalidInput, "eps_values and betas must be nonempty");
  const HermitianOperator o = parse_observable(cfg.observable, cfg.qubits);
  const PauliDecomposition decomp = decompose(o, cfg.qubits);
  const double tr_o2 = (o.matrix() * o.matrix()).trace().real();
  const int d = o.dim();
  for (double eps : cfg.eps_values) {
    require(eps > 0.0, ErrorCode::kInvalidInput, "eps_values must be > 0");
    (void)PrivacyBudget(eps, cfg.delta);
  }
  for (double b : cfg.betas) (void)AccuracyDemand(b, cfg.eta);

  struct BoundCell {
    double eps;
    double beta;
    std::optional<std::int64_t> lower;
    std::string lower_note;
    std::int64_t upper;
    std::int64_t shadow;
    std::optional<std::int64_t> fidelity;
    bool theta_regime;
  };
  std::vector<BoundCell> cells;
  for (double beta : cfg.betas) {
    for (double eps : cfg.eps_values) {
      const PrivacyBudget budget(eps, cfg.delta);
      const AccuracyDemand demand(beta, cfg.eta);
      BoundCell c{eps, beta, std::nullopt, "", 0, 0, std::nullopt, eps <= 1.0};
      try {
        c.lower = required_samples_lower(decomp.lambda_max(),
                                         decomp.lambda_min(), budget, demand);
      } catch (const Error& e) {
        c.lower_note = e.what();
      }
      c.upper = required_samples_upper(decomp.weight(), budget, demand);
      c.shadow = shadow_required_samples(tr_o2, d, budget, demand);
      try {
        c.fidelity = fidelity_lower_bound(decomp.lambda_max(),
                                          decomp.lambda_min(), demand);
      } catch (const Error&) {
      }
      cells.push_back(c);
    }
  }

  const fs::path dir = prepare_output_dir(cfg.output_dir);
  bool ordering_ok = true;
  std::map<double, std::pair<double, double>> ratio_range;
  std::ostringstream table;
  {
    CsvWriter csv(table, {"epsilon", "beta", "lower", "upper", "shadow_upper",
                          "fidelity_lower", "upper_over_lower", "theta_regime",
                          "ordering"});
    for (const BoundCell& c : cells) {
      const std::string oor = "out-of-regime";
      std::string ratio = "n/a";
      std::string ordering = "n/a";
      if (c.lower) {
        const double r = static_cast<double>(c.upper) /
                         static_cast<double>(*c.lower);
        ratio = num(r);
        const bool ok = *c.lower <= std::min(c.upper, c.shadow);
        ordering = ok ? "ok" : "violated";
        if (c.theta_regime) {
          ordering_ok = ordering_ok && ok;
          auto [it, fresh] = ratio_range.try_emplace(c.beta, r, r);
          if (!fresh) {
            it->second.first = std::min(it->second.first, r);
            it->second.second = std::max(it->second.second, r);
          }
        }
      }
      csv.row(std::vector<qldp::Cell>{
          c.eps, c.beta,
          c.lower ? qldp::Cell(static_cast<long long>(*c.lower)) : qldp::Cell(oor),
          static_cast<long long>(c.upper), static_cast<long long>(c.shadow),
          c.fidelity ? qldp::Cell(static_cast<long long>(*c.fidelity))
                     : qldp::Cell(oor),
          ratio, std::string(c.theta_regime ? "yes" : oor), ordering});
    }
  }
  write_file(dir / "bounds.csv", [&](std::ostream& f) { f << table.str(); });
  out << table.str();
  for (const auto& [beta, range] : ratio_range) {
    out << "ratio_spread beta=" << num(beta) << ": "
        << num(range.second / range.first) << "\n";
  }
  out << "ordering: " << (ordering_ok ? "ok" : "violated") << "\n";
  return ordering_ok ? kExitOk : kExitFailed;
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  try {
    ExperimentConfig cfg;
    if (!parse_arguments(argc, argv, cfg, out)) return kExitOk;
    if (cfg.command == "utility-curve") return cmd_utility_curve(cfg, out);
    if (cfg.command == "certify") return cmd_certify(cfg, out);
    if (cfg.command == "estimate") return cmd_estimate(cfg, out);
    if (cfg.command == "shadows") return cmd_shadows(cfg, out);
    if (cfg.command == "cost-report") return cmd_cost_report(cfg, out);
    if (cfg.command == "bounds") return cmd_bounds(cfg, out);
    err << "error: unknown command '" << cfg.command << "'\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kOutOfRegime:
      case ErrorCode::kInfeasible:
      case ErrorCode::kNoninvertibleMechanism:
        return kExitOutOfRegime;
      default:
        return kExitUsage;
    }
  }
}

}  // namespace qldp::cli
