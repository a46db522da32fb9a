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


#include "qldp/cli/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <locale>
#include <sstream>
#include <ostream>

#include "qldp/errors.hpp"
#include "qldp/table_io.hpp"

namespace qldp::cli {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 55;

constexpr std::array<const char*, 6> kColors = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) { return format_number(v, 6); }

}  // namespace

void write_line_chart(std::ostream& sink, const ChartLabels& labels,
                      const std::vector<Series>& series) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const Series& s : series) {
    require(s.x.size() == s.y.size(), ErrorCode::kInvalidInput,
            "series x and y lengths differ");
    for (double v : s.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
    for (double v : s.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    return kTop + ph - (y - ymin) / (ymax - ymin) * ph;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"22\" text-anchor=\"middle\""
      << " font-size=\"14\">" << escape(labels.title) << "</text>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\""
      << kLeft + pw << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + ph << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    out << "<line x1=\"" << px(xv) << "\" y1=\"" << kTop + ph << "\" x2=\""
        << px(xv) << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py(yv) << "\" x2=\""
        << kLeft << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(labels.x_axis) << "</text>\n";
  out << "<text transform=\"translate(18," << kTop + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(labels.y_axis)
      << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kColors[k % kColors.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < series[k].x.size(); ++i) {
      if (i) out << ' ';
      out << fmt(px(series[k].x[i])) << ',' << fmt(py(series[k].y[i]));
    }
    out << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * static_cast<double>(k);
    out << "<line x1=\"" << kLeft + pw + 15 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + pw + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + pw + 45 << "\" y=\"" << ly + 4 << "\">"
        << escape(series[k].label) << "</text>\n";
  }
  out << "</svg>\n";
  sink << out.str();
}

}  // namespace qldp::cli
