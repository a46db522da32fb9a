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


#include "qldp/cli/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qldp/table_io.hpp"

namespace qldp::cli {

namespace {

std::vector<double> default_eps_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(0.1 * i);
  return grid;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

std::string at_line(const std::string& source, int line) {
  return source + ":" + std::to_string(line) + ": ";
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open " + path);
  std::vector<std::vector<Complex>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto w = words(line);
    require(w.size() % 2 == 0, ErrorCode::kParse,
            at_line(path, line_no) + "expected 're im' pairs");
    std::vector<Complex> row;
    for (std::size_t i = 0; i < w.size(); i += 2) {
      try {
        row.emplace_back(parse_double(w[i]), parse_double(w[i + 1]));
      } catch (const Error& e) {
        fail(ErrorCode::kParse, at_line(path, line_no) + e.what());
      }
    }
    require(rows.empty() || row.size() == rows.front().size(),
            ErrorCode::kParse, at_line(path, line_no) + "ragged matrix row");
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), ErrorCode::kParse, path + ": no matrix rows");
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

template <typename T>
void clear_if_blank(const CLI::Option* opt, std::vector<T>& values) {
  const auto& raw = opt->results();
  if (opt->count() > 0 &&
      std::all_of(raw.begin(), raw.end(),
                  [](const std::string& r) { return trim(r).empty(); })) {
    values.clear();
  }
}

}  // namespace

bool parse_arguments(int argc, const char* const* argv, ExperimentConfig& cfg,
                     std::ostream& out) {
  cfg = ExperimentConfig{};
  cfg.eps_grid = default_eps_grid();

  CLI::App app{"Quantum local differential privacy toolkit", "qldp"};
  app.set_config("--config", "", "flat key=value file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  app.add_option("command", cfg.command, "subcommand")
      ->required()
      ->check(CLI::IsMember({"utility-curve", "certify", "estimate", "shadows",
                             "cost-report", "bounds"}));
  app.add_option("--seed", cfg.seed)->envname("QLDP_SEED");
  app.add_option("--trials", cfg.trials);
  app.add_option("--output_dir,--output-dir", cfg.output_dir);
  app.add_option("--threads", cfg.threads);

  app.add_option("--dim", cfg.dim);
  CLI::Option* eps_grid =
      app.add_option("--eps_grid,--eps-grid", cfg.eps_grid)->delimiter(',');
  CLI::Option* deltas = app.add_option("--deltas", cfg.deltas)->delimiter(',');
  CLI::Option* dims = app.add_option("--dims", cfg.dims)->delimiter(',');
  app.add_option("--panel_delta,--panel-delta", cfg.panel_delta);

  app.add_option("--channel", cfg.channel);
  app.add_option("--restarts", cfg.restarts);
  app.add_option("--local_steps,--local-steps", cfg.local_steps);

  app.add_option("--epsilon", cfg.epsilon);
  app.add_option("--delta", cfg.delta);
  app.add_option("--beta", cfg.beta);
  app.add_option("--eta", cfg.eta);
  app.add_option("--qubits", cfg.qubits);
  app.add_option("--observable", cfg.observable);
  app.add_option("--state", cfg.state);
  app.add_option("--n", cfg.n);
  app.add_option("--batch", cfg.batch);
  app.add_option("--snapshots", cfg.snapshots);

  CLI::Option* eps_values =
      app.add_option("--eps_values,--eps-values", cfg.eps_values)
          ->delimiter(',');
  CLI::Option* betas = app.add_option("--betas", cfg.betas)->delimiter(',');
  app.add_option("--precision_bits,--precision-bits", cfg.precision_bits);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return false;
  } catch (const CLI::ParseError& e) {
    fail(ErrorCode::kParse, e.what());
  }
  // An explicitly empty list ("--deltas ''") means an empty grid; CLI11
  // would otherwise read it as a single zero.
  clear_if_blank(eps_grid, cfg.eps_grid);
  clear_if_blank(deltas, cfg.deltas);
  clear_if_blank(dims, cfg.dims);
  clear_if_blank(eps_values, cfg.eps_values);
  clear_if_blank(betas, cfg.betas);
  return true;
}

SearchConfig search_config(const ExperimentConfig& cfg) {
  SearchConfig s;
  s.restarts = cfg.restarts;
  s.local_steps = cfg.local_steps;
  s.seed = cfg.seed;
  s.threads = cfg.threads;
  validate(s);
  return s;
}

HermitianOperator parse_observable(const std::string& arg, int qubits) {
  const std::string text = trim(arg);
  if (text.rfind("file:", 0) == 0) {
    HermitianOperator o(read_matrix_file(text.substr(5)));
    require(o.dim() == (1 << qubits), ErrorCode::kInvalidInput,
            "observable file has the wrong dimension for " +
                std::to_string(qubits) + " qubit(s)");
    return o;
  }
  std::vector<PauliTerm> terms;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto w = words(item);
    require(w.size() == 1 || w.size() == 2, ErrorCode::kParse,
            "observable term '" + trim(item) + "' is not '[coeff] LABEL'");
    const double coeff = w.size() == 2 ? parse_double(w[0]) : 1.0;
    terms.push_back({PauliLabel(w.back()), coeff});
  }
  require(!terms.empty(), ErrorCode::kParse, "empty observable");
  return HermitianOperator(
      PauliDecomposition::from_terms(qubits, std::move(terms)).reconstruct());
}

DensityMatrix parse_state(const std::string& arg, int dim) {
  const std::string text = trim(arg);
  if (text == "zero") return DensityMatrix::basis(dim, 0);
  if (text == "mixed") return DensityMatrix::maximally_mixed(dim);
  if (text.rfind("diag:", 0) == 0) {
    std::vector<double> w;
    std::istringstream ss(text.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) w.push_back(parse_double(trim(item)));
    require(static_cast<int>(w.size()) == dim, ErrorCode::kInvalidInput,
            "diag state needs " + std::to_string(dim) + " weights");
    return DensityMatrix::diagonal(w);
  }
  if (text.rfind("file:", 0) == 0) {
    DensityMatrix rho(read_matrix_file(text.substr(5)));
    require(rho.dim() == dim, ErrorCode::kInvalidInput,
            "state file has dimension " + std::to_string(rho.dim()) +
                ", expected " + std::to_string(dim));
    return rho;
  }
  fail(ErrorCode::kParse, "unknown state '" + text + "'");
}

QuantumChannel parse_channel(const std::string& arg) {
  const auto w = words(arg);
  if (!w.empty() && w.front() == "depolarizing") {
    require(w.size() == 3, ErrorCode::kParse,
            "expected 'depolarizing D P', got '" + arg + "'");
    const long long d = parse_integer(w[1]);
    require(d >= 1 && d <= 64, ErrorCode::kInvalidInput,
            "depolarizing dimension out of range");
    return depolarizing(static_cast<int>(d), parse_double(w[2]));
  }
  const std::string path = trim(arg);
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::kIo,
          "cannot open channel file '" + path + "'");
  return parse_kraus(in, path);
}

QuantumChannel parse_kraus(std::istream& in, const std::string& source) {
  int din = 0;
  int dout = 0;
  std::vector<Matrix> kraus;
  int row = 0;
  int line_no = 0;
  std::string line;
  auto finish_op = [&](int at) {
    if (!kraus.empty()) {
      require(row == dout, ErrorCode::kParse,
              at_line(source, at) + "Kraus operator has " +
                  std::to_string(row) + " rows, expected " +
                  std::to_string(dout));
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto w = words(line);
    if (w.front() == "dims") {
      require(din == 0, ErrorCode::kParse,
              at_line(source, line_no) + "dims given twice");
      require(w.size() == 3, ErrorCode::kParse,
              at_line(source, line_no) + "expected 'dims DIN DOUT'");
      try {
        din = static_cast<int>(parse_integer(w[1]));
        dout = static_cast<int>(parse_integer(w[2]));
      } catch (const Error& e) {
        fail(ErrorCode::kParse, at_line(source, line_no) + e.what());
      }
      require(din >= 1 && dout >= 1 && din <= 64 && dout <= 64,
              ErrorCode::kParse, at_line(source, line_no) + "bad dimensions");
      continue;
    }
    require(din > 0, ErrorCode::kParse,
            at_line(source, line_no) + "'dims' must come first");
    if (w.front() == "kraus") {
      require(w.size() == 1, ErrorCode::kParse,
              at_line(source, line_no) + "unexpected text after 'kraus'");
      finish_op(line_no);
      kraus.push_back(Matrix::Zero(dout, din));
      row = 0;
      continue;
    }
    require(!kraus.empty(), ErrorCode::kParse,
            at_line(source, line_no) + "matrix row before any 'kraus'");
    require(row < dout, ErrorCode::kParse,
            at_line(source, line_no) + "too many rows in Kraus operator");
    require(static_cast<int>(w.size()) == 2 * din, ErrorCode::kParse,
            at_line(source, line_no) + "expected " + std::to_string(2 * din) +
                " numbers (re im pairs), got " + std::to_string(w.size()));
    for (int j = 0; j < din; ++j) {
      try {
        kraus.back()(row, j) =
            Complex(parse_double(w[static_cast<std::size_t>(2 * j)]),
                    parse_double(w[static_cast<std::size_t>(2 * j + 1)]));
      } catch (const Error& e) {
        fail(ErrorCode::kParse, at_line(source, line_no) + e.what());
      }
    }
    ++row;
  }
  require(din > 0, ErrorCode::kParse, source + ": missing 'dims' line");
  require(!kraus.empty(), ErrorCode::kParse,
          source + ": no Kraus operators");
  finish_op(line_no);
  return QuantumChannel(std::move(kraus));
}

}  // namespace qldp::cli
