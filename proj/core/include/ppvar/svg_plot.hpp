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

#ifndef PPVAR_SVG_PLOT_HPP_
#define PPVAR_SVG_PLOT_HPP_

#include <string>
#include <vector>

namespace ppvar {

struct BoxplotSeries {
  std::string label;
  std::vector<double> values;
};

// Minimal static boxplot (median, quartiles, whiskers at the data range)
// for quick inspection of improvement distributions.
void write_boxplot_svg(const std::string& path, const std::string& title,
                       const std::vector<BoxplotSeries>& series);

}  // namespace ppvar

#endif  // PPVAR_SVG_PLOT_HPP_
