// Copyright 2026 The marsolve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace marsolve {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Static SVG line chart with axes, ticks and a legend.
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series);

/// Renders the chart for a sweep CSV (header starting "param,") or a trace
/// CSV (header starting "iter,"). Throws std::runtime_error otherwise.
std::string chart_from_csv(std::string_view csv);

}  // namespace marsolve
