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

#include "mar/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mar/errors.hpp"

namespace mar {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

void validate(const LinkModel& model) {
  require_positive(model.carrier_frequency_hz, "carrier_frequency_hz");
  require_positive(model.bandwidth_hz, "bandwidth_hz");
  require_positive(model.noise_power_w, "noise_power_w");
  require_positive(model.distance_factor, "distance_factor");
  if (model.reference_distances_m.empty()) {
    throw ConfigError("reference_distances_m must list at least one user");
  }
  for (double d : model.reference_distances_m) {
    require_positive(d, "reference_distances_m");
  }
}

double user_distance(std::size_t user, const LinkModel& model) {
  if (user >= model.num_users()) {
    throw ConfigError("user index " + std::to_string(user + 1) +
                      " out of range 1.." + std::to_string(model.num_users()));
  }
  return model.distance_factor * model.reference_distances_m[user];
}

double path_loss_db(double distance_m, double frequency_hz) {
  if (!(distance_m > 0.0) || !(frequency_hz > 0.0)) {
    throw std::domain_error("path_loss_db: distance and frequency must be positive");
  }
  return 20.0 * std::log10(distance_m) + 20.0 * std::log10(frequency_hz) - 147.55;
}

double channel_gain(double distance_m, double frequency_hz) {
  return std::pow(10.0, -path_loss_db(distance_m, frequency_hz) / 10.0);
}

double user_gain(std::size_t user, const LinkModel& model) {
  return channel_gain(user_distance(user, model), model.carrier_frequency_hz);
}

std::vector<double> user_gains(const LinkModel& model) {
  std::vector<double> gains(model.num_users());
  for (std::size_t n = 0; n < gains.size(); ++n) gains[n] = user_gain(n, model);
  return gains;
}

double rate(double power_w, double gain, const LinkModel& model) {
  if (power_w < 0.0) throw std::domain_error("rate: negative power");
  return model.bandwidth_hz * std::log1p(power_w * gain / model.noise_power_w) /
         std::numbers::ln2;
}

double rate_slope(double power_w, double gain, const LinkModel& model) {
  return model.bandwidth_hz * gain /
         (std::numbers::ln2 * (model.noise_power_w + power_w * gain));
}

double min_power(double required_bps, double gain, const LinkModel& model) {
  if (required_bps <= 0.0) return 0.0;
  return model.noise_power_w * std::expm1(required_bps / model.bandwidth_hz * std::numbers::ln2) /
         gain;
}

}  // namespace mar
