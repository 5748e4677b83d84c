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

#include "svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace marsolve {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 80, kRight = 20, kTop = 40, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  while (true) {
    const auto pos = line.find(sep);
    out.emplace_back(line.substr(0, pos));
    if (pos == std::string_view::npos) break;
    line.remove_prefix(pos + 1);
  }
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("chart: non-numeric CSV field '" + s + "'");
  }
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<Series>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (double v : s.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
    for (double v : s.y) {
      if (std::isfinite(v)) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
  if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double v) { return kTop + (ymax - v) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
     << escape(title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    os << "<line x1=\"" << num(sx(xv)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(sx(xv))
       << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(sx(xv)) << "\" y=\"" << kTop + ph + 18
       << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << kLeft
       << "\" y2=\"" << num(sy(yv)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(sy(yv) + 4)
       << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
     << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << kTop + ph / 2 << ")\">" << escape(y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      os << num(sx(s.x[i])) << ',' << num(sy(s.y[i])) << ' ';
    }
    os << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      os << "<circle cx=\"" << num(sx(s.x[i])) << "\" cy=\"" << num(sy(s.y[i]))
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kTop + 16 + 18 * static_cast<double>(k);
    os << "<line x1=\"" << kLeft + pw - 130 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw - 110
       << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kLeft + pw - 104 << "\" y=\"" << ly + 4 << "\">" << escape(s.name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string chart_from_csv(std::string_view csv) {
  std::vector<std::vector<std::string>> rows;
  while (!csv.empty()) {
    const auto eol = csv.find('\n');
    std::string_view line = csv.substr(0, eol);
    csv.remove_prefix(eol == std::string_view::npos ? csv.size() : eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    rows.push_back(split(line, ','));
  }
  if (rows.empty()) throw std::runtime_error("chart: empty CSV");
  const auto header = rows.front();
  rows.erase(rows.begin());
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("chart: CSV lacks column '" + name + "'");
    const auto idx = static_cast<std::size_t>(it - header.begin());
    std::vector<double> values;
    for (const auto& r : rows) {
      if (idx >= r.size()) throw std::runtime_error("chart: short CSV row");
      values.push_back(to_double(r[idx]));
    }
    return values;
  };

  if (header.front() == "param") {
    const std::string param = rows.empty() ? "value" : rows.front().front();
    const auto x = column("value");
    return line_chart_svg("Utility versus " + param, param, "utility",
                          {{"OA", x, column("utility_oa")}, {"greedy", x, column("utility_greedy")}});
  }
  if (header.front() == "iter") {
    const auto x = column("iter");
    return line_chart_svg("Outer approximation bounds", "iteration", "objective",
                          {{"z_ub", x, column("z_ub")}, {"z_lb", x, column("z_lb")}});
  }
  throw std::runtime_error("chart: unrecognized CSV header '" + header.front() + "'");
}

}  // namespace marsolve
