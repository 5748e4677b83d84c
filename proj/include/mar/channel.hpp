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

#include <cstddef>
#include <vector>

namespace mar {

/// Static free-space downlink between one base station and N users.
struct LinkModel {
  double carrier_frequency_hz = 28e9;
  double bandwidth_hz = 5e6;
  double noise_power_w = 5e-8;
  std::vector<double> reference_distances_m{5, 4, 3, 2, 1};
  double distance_factor = 5.0;

  std::size_t num_users() const { return reference_distances_m.size(); }
};

/// Throws ConfigError unless every field is strictly positive and finite.
void validate(const LinkModel& model);

/// Distance of user `user` (0-based) from the base station, D_f * d0.
double user_distance(std::size_t user, const LinkModel& model);

/// Free-space path loss in dB with d in meters and f in hertz.
double path_loss_db(double distance_m, double frequency_hz);

/// Linear power gain, the inverse of path_loss_db.
double channel_gain(double distance_m, double frequency_hz);

/// Gain of user `user` under `model`.
double user_gain(std::size_t user, const LinkModel& model);

/// Gains for every user, in index order.
std::vector<double> user_gains(const LinkModel& model);

/// Shannon rate B log2(1 + p g / sigma^2) in bits per second.
double rate(double power_w, double gain, const LinkModel& model);

/// d rate / d p at `power_w`, in bits per second per watt.
double rate_slope(double power_w, double gain, const LinkModel& model);

/// Smallest power whose rate reaches `required_bps`.
double min_power(double required_bps, double gain, const LinkModel& model);

}  // namespace mar
