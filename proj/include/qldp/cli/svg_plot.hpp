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


#ifndef QLDP_CLI_SVG_PLOT_HPP_
#define QLDP_CLI_SVG_PLOT_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace qldp::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartLabels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

// Line chart with axes, ticks, one polyline per series and a legend.
void write_line_chart(std::ostream& out, const ChartLabels& labels,
                      const std::vector<Series>& series);

}  // namespace qldp::cli

#endif  // QLDP_CLI_SVG_PLOT_HPP_
