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


#include "qldp/table_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "qldp/errors.hpp"

namespace qldp {

std::string format_number(double value, int significant) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  require(values.size() == columns_, ErrorCode::kInvalidInput,
          "csv row width does not match the header");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_number(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  require(cells.size() == columns_, ErrorCode::kInvalidInput,
          "csv row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    if (const auto* d = std::get_if<double>(&cells[i])) {
      out_ << format_number(*d);
    } else if (const auto* n = std::get_if<long long>(&cells[i])) {
      out_ << *n;
    } else {
      out_ << std::get<std::string>(cells[i]);
    }
  }
  out_ << '\n';
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  fail(ErrorCode::kParse, "csv has no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  require(row < rows.size(), ErrorCode::kParse, "csv row out of range");
  return parse_double(rows[row][column(name)]);
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable parse_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      table.header = split_commas(line);
      have_header = true;
      continue;
    }
    auto cells = split_commas(line);
    require(cells.size() == table.header.size(), ErrorCode::kParse,
            "line " + std::to_string(line_no) + ": expected " +
                std::to_string(table.header.size()) + " fields");
    table.rows.push_back(std::move(cells));
  }
  require(have_header, ErrorCode::kParse, "csv is empty");
  return table;
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  require(res.ec == std::errc() && res.ptr == last && first != last,
          ErrorCode::kParse, "not a number: '" + text + "'");
  return value;
}

long long parse_integer(const std::string& text) {
  long long value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  require(res.ec == std::errc() && res.ptr == last && first != last,
          ErrorCode::kParse, "not an integer: '" + text + "'");
  return value;
}

}  // namespace qldp
