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


#ifndef QLDP_CLI_CONFIG_HPP_
#define QLDP_CLI_CONFIG_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qldp/pauli.hpp"
#include "qldp/search.hpp"

namespace qldp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitOutOfRegime = 3;

// Every key the subcommands understand. A key unused by the chosen
// subcommand is accepted and ignored.
struct ExperimentConfig {
  std::string command;
  std::uint64_t seed = 1;
  std::int64_t trials = 200;
  std::string output_dir = ".";
  int threads = 0;

  // utility-curve
  int dim = 10;
  std::vector<double> eps_grid;
  std::vector<double> deltas = {0.0, 0.1, 0.3};
  std::vector<int> dims = {2, 10, 100};
  double panel_delta = 0.1;

  // certify
  std::string channel = "depolarizing 2 1.0";
  int restarts = 64;
  int local_steps = 600;

  // estimate, shadows, bounds
  double epsilon = 1.0;
  double delta = 0.0;
  double beta = 0.1;
  double eta = 0.05;
  int qubits = 1;
  std::string observable = "Z";
  std::string state = "zero";
  std::int64_t n = 0;  // 0: use the sufficient sample size
  int batch = 0;       // 0: default batching
  std::int64_t snapshots = 0;

  // bounds
  std::vector<double> eps_values = {0.25, 0.5, 1.0, 2.0};
  std::vector<double> betas = {0.05, 0.1};

  // cost-report
  int precision_bits = 64;
};

// Parses `qldp <command> [--config FILE] [--key value ...]`. Command-line
// values win over the config file, which wins over QLDP_SEED and the
// defaults. Throws qldp::Error(kParse) on malformed input; help requests
// print to `out` and return false.
bool parse_arguments(int argc, const char* const* argv, ExperimentConfig& cfg,
                     std::ostream& out);

SearchConfig search_config(const ExperimentConfig& cfg);

// "Z", "0.5 XX, -0.25 ZI" or "file:PATH" with one matrix row per line as
// whitespace-separated "re im" pairs.
HermitianOperator parse_observable(const std::string& arg, int qubits);

// "zero", "mixed", "diag:w0,w1,..." or "file:PATH" (matrix as above).
DensityMatrix parse_state(const std::string& arg, int dim);

// "depolarizing D P" or a path to a Kraus file:
//   # comment
//   dims DIN DOUT
//   kraus
//   <DOUT lines of DIN "re im" pairs>
//   kraus
//   ...
QuantumChannel parse_channel(const std::string& arg);
QuantumChannel parse_kraus(std::istream& in, const std::string& source);

}  // namespace qldp::cli

#endif  // QLDP_CLI_CONFIG_HPP_
