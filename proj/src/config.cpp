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

#include "mar/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "mar/errors.hpp"

namespace mar {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) +
                      "' is not a number");
  }
  return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> values;
  while (true) {
    const auto comma = text.find(',');
    values.push_back(parse_number(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

double* scalar_field(ScenarioConfig& cfg, std::string_view key) {
  if (key == "carrier_frequency_hz") return &cfg.link.carrier_frequency_hz;
  if (key == "bandwidth_hz") return &cfg.link.bandwidth_hz;
  if (key == "noise_power_w") return &cfg.link.noise_power_w;
  if (key == "distance_factor") return &cfg.link.distance_factor;
  if (key == "lambda") return &cfg.weights.lambda;
  if (key == "mu") return &cfg.weights.mu;
  if (key == "gamma") return &cfg.weights.gamma;
  if (key == "r_th_bps") return &cfg.weights.r_th_bps;
  if (key == "total_power_w") return &cfg.weights.total_power_w;
  if (key == "epsilon") return &cfg.epsilon;
  return nullptr;
}

}  // namespace

RedundancyConvention parse_redundancy(std::string_view name) {
  if (name == "reward") return RedundancyConvention::kReward;
  if (name == "paper") return RedundancyConvention::kPaperLiteral;
  throw ConfigError("key 'redundancy_convention': expected 'reward' or 'paper', got '" +
                    std::string(name) + "'");
}

const char* redundancy_name(RedundancyConvention convention) {
  return convention == RedundancyConvention::kReward ? "reward" : "paper";
}

void set_scalar(ScenarioConfig& cfg, std::string_view key, double value) {
  double* field = scalar_field(cfg, key);
  if (!field) throw ConfigError("unknown scalar key '" + std::string(key) + "'");
  *field = value;
}

double get_scalar(const ScenarioConfig& cfg, std::string_view key) {
  const double* field = scalar_field(const_cast<ScenarioConfig&>(cfg), key);
  if (!field) throw ConfigError("unknown scalar key '" + std::string(key) + "'");
  return *field;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg = table1_defaults();
  std::optional<double> n_users;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("key '" + std::string(key) + "' given twice");
    }
    if (key == "n_users") {
      n_users = parse_number(key, value);
    } else if (key == "reference_distances_m") {
      cfg.link.reference_distances_m = parse_list(key, value);
    } else if (key == "required_rates_bps") {
      const auto rates = parse_list(key, value);
      if (rates.size() != kNumTiers) {
        throw ConfigError("key 'required_rates_bps': expected 3 values");
      }
      std::copy(rates.begin(), rates.end(), cfg.tiers.required_rates_bps.begin());
    } else if (key == "redundancy_convention") {
      cfg.weights.redundancy_convention = parse_redundancy(value);
    } else if (double* field = scalar_field(cfg, key)) {
      *field = parse_number(key, value);
    } else {
      throw ConfigError("unknown key '" + std::string(key) + "' on line " +
                        std::to_string(line_no));
    }
  }
  if (n_users) {
    if (*n_users < 1 || *n_users != std::floor(*n_users)) {
      throw ConfigError("key 'n_users': must be a positive integer");
    }
    if (static_cast<std::size_t>(*n_users) != cfg.link.reference_distances_m.size()) {
      throw ConfigError("key 'n_users': " + std::to_string(static_cast<long>(*n_users)) +
                        " users but reference_distances_m has " +
                        std::to_string(cfg.link.reference_distances_m.size()) + " entries");
    }
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void write_config(std::ostream& os, const ScenarioConfig& cfg) {
  const auto old_precision = os.precision(17);
  auto list = [&os](const auto& values) {
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i];
    os << '\n';
  };
  os << "n_users = " << cfg.num_users() << '\n';
  os << "carrier_frequency_hz = " << cfg.link.carrier_frequency_hz << '\n';
  os << "bandwidth_hz = " << cfg.link.bandwidth_hz << '\n';
  os << "noise_power_w = " << cfg.link.noise_power_w << '\n';
  os << "reference_distances_m = ";
  list(cfg.link.reference_distances_m);
  os << "distance_factor = " << cfg.link.distance_factor << '\n';
  os << "required_rates_bps = ";
  list(cfg.tiers.required_rates_bps);
  os << "lambda = " << cfg.weights.lambda << '\n';
  os << "mu = " << cfg.weights.mu << '\n';
  os << "gamma = " << cfg.weights.gamma << '\n';
  os << "r_th_bps = " << cfg.weights.r_th_bps << '\n';
  os << "total_power_w = " << cfg.weights.total_power_w << '\n';
  os << "redundancy_convention = " << redundancy_name(cfg.weights.redundancy_convention) << '\n';
  os << "epsilon = " << cfg.epsilon << '\n';
  os.precision(old_precision);
}

}  // namespace mar
