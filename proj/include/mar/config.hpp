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

#include <iosfwd>
#include <string>
#include <string_view>

#include "mar/model.hpp"

namespace mar {

/// Parses flat `key = value` text. Keys not present keep their reference
/// default; `#` starts a comment; vector values are comma-separated.
/// Recognized keys: n_users, carrier_frequency_hz, bandwidth_hz,
/// noise_power_w, reference_distances_m, distance_factor,
/// required_rates_bps, lambda, mu, gamma, r_th_bps, total_power_w,
/// redundancy_convention (reward | paper), epsilon.
/// The result is validated; every failure throws ConfigError naming the key.
ScenarioConfig parse_config(std::string_view text);

/// Reads and parses a config file.
ScenarioConfig load_config(const std::string& path);

/// Writes `cfg` in the same format parse_config reads.
void write_config(std::ostream& os, const ScenarioConfig& cfg);

/// Sets one scalar field by its config key (e.g. "distance_factor").
/// Does not re-validate.
void set_scalar(ScenarioConfig& cfg, std::string_view key, double value);

/// Reads one scalar field by key.
double get_scalar(const ScenarioConfig& cfg, std::string_view key);

RedundancyConvention parse_redundancy(std::string_view name);
const char* redundancy_name(RedundancyConvention convention);

}  // namespace mar
