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

// Random instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mar/model.hpp"

namespace mar::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline TierSelection random_selection(std::mt19937_64& rng, std::size_t n) {
  TierSelection sel{std::vector<int>(n)};
  for (auto& t : sel.tier_of_user) t = std::uniform_int_distribution<int>(1, kNumTiers)(rng);
  return sel;
}

/// Random scenario with n users; weights strictly inside their ranges so
/// that every objective term is active.
inline ScenarioConfig random_config(std::mt19937_64& rng, std::size_t n) {
  ScenarioConfig cfg = table1_defaults();
  cfg.link.reference_distances_m.resize(n);
  for (auto& d : cfg.link.reference_distances_m) d = uniform(rng, 1.0, 6.0);
  cfg.link.distance_factor = uniform(rng, 1.0, 8.0);
  cfg.weights.lambda = uniform(rng, 0.05, 0.6);
  cfg.weights.mu = uniform(rng, 0.05, std::min(0.35, 0.95 - cfg.weights.lambda));
  cfg.weights.gamma = uniform(rng, 1.0, 3.0);
  return cfg;
}

/// Sets the budget to `factor` times the minimum power of `sel`.
inline void budget_for(ScenarioConfig& cfg, const TierSelection& sel, double factor) {
  cfg.weights.total_power_w = factor * min_powers(sel, cfg).total();
}

}  // namespace mar::testing
