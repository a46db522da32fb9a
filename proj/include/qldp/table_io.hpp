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


// Locale-independent CSV emission and parsing.

#ifndef QLDP_TABLE_IO_HPP_
#define QLDP_TABLE_IO_HPP_

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qldp {

// Shortest round-trippable text at `significant` digits ("%.*g" style, but
// never affected by the global locale).
std::string format_number(double value, int significant = 12);

using Cell = std::variant<double, long long, std::string>;

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  void row(const std::vector<double>& values);
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws kParse when missing.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

// Plain comma-separated text without quoting; throws kParse on ragged rows.
CsvTable parse_csv(std::istream& in);

// Strict decimal parse of the whole string (std::from_chars).
double parse_double(const std::string& text);
long long parse_integer(const std::string& text);

}  // namespace qldp

#endif  // QLDP_TABLE_IO_HPP_
