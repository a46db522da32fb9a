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


#ifndef QLDP_CLI_COMMANDS_HPP_
#define QLDP_CLI_COMMANDS_HPP_

#include <iosfwd>

#include "qldp/cli/config.hpp"

namespace qldp::cli {

// Each returns a process exit code. Configuration is validated before any
// file is written.
int cmd_utility_curve(const ExperimentConfig& cfg, std::ostream& out);
int cmd_certify(const ExperimentConfig& cfg, std::ostream& out);
int cmd_estimate(const ExperimentConfig& cfg, std::ostream& out);
int cmd_shadows(const ExperimentConfig& cfg, std::ostream& out);
int cmd_cost_report(const ExperimentConfig& cfg, std::ostream& out);
int cmd_bounds(const ExperimentConfig& cfg, std::ostream& out);

// Parses arguments, dispatches, and maps qldp::Error codes to exit codes.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace qldp::cli

#endif  // QLDP_CLI_COMMANDS_HPP_
