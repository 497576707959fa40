// Copyright 2026 The ppvar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ppvar/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ppvar/errors.hpp"

namespace ppvar {

namespace {

double quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * (static_cast<double>(sorted.size()) - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = static_cast<size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1 - frac) + sorted[hi] * frac;
}

}  // namespace

void write_boxplot_svg(const std::string& path, const std::string& title,
                       const std::vector<BoxplotSeries>& series) {
  if (series.empty()) throw Error("boxplot needs at least one series");
  const double width = 160.0 * static_cast<double>(series.size()) + 80.0;
  const double height = 360.0;
  const double top = 40.0, bottom = 40.0;
  double vmin = 0.0, vmax = 0.0;
  bool first = true;
  for (const auto& s : series)
    for (double v : s.values) {
      if (first || v < vmin) vmin = v;
      if (first || v > vmax) vmax = v;
      first = false;
    }
  if (vmax <= vmin) vmax = vmin + 1.0;
  const double span = vmax - vmin;
  vmin -= 0.05 * span;
  vmax += 0.05 * span;
  auto y_of = [&](double v) {
    return top + (vmax - v) / (vmax - vmin) * (height - top - bottom);
  };

  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
     << "' height='" << height << "'>\n";
  os << "<text x='" << width / 2 << "' y='20' text-anchor='middle' "
     << "font-family='sans-serif' font-size='14'>" << title << "</text>\n";
  if (vmin < 0 && vmax > 0) {
    os << "<line x1='40' x2='" << width - 20 << "' y1='" << y_of(0)
       << "' y2='" << y_of(0) << "' stroke='#999' stroke-dasharray='4 3'/>\n";
  }
  for (size_t i = 0; i < series.size(); ++i) {
    std::vector<double> sorted = series[i].values;
    std::sort(sorted.begin(), sorted.end());
    const double q1 = quantile(sorted, 0.25);
    const double q2 = quantile(sorted, 0.5);
    const double q3 = quantile(sorted, 0.75);
    const double lo = sorted.empty() ? 0.0 : sorted.front();
    const double hi = sorted.empty() ? 0.0 : sorted.back();
    const double cx = 80.0 + 160.0 * static_cast<double>(i) + 40.0;
    const double half = 35.0;
    os << "<line x1='" << cx << "' x2='" << cx << "' y1='" << y_of(lo)
       << "' y2='" << y_of(hi) << "' stroke='black'/>\n";
    os << "<rect x='" << cx - half << "' y='" << y_of(q3) << "' width='"
       << 2 * half << "' height='" << y_of(q1) - y_of(q3)
       << "' fill='#7aa6c2' stroke='black'/>\n";
    os << "<line x1='" << cx - half << "' x2='" << cx + half << "' y1='"
       << y_of(q2) << "' y2='" << y_of(q2)
       << "' stroke='black' stroke-width='2'/>\n";
    os << "<text x='" << cx << "' y='" << height - 14
       << "' text-anchor='middle' font-family='sans-serif' font-size='12'>"
       << series[i].label << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace ppvar
