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

#include "mar/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "mar/errors.hpp"

namespace mar {

const char* TierTable::label(int tier) {
  switch (tier) {
    case 1: return "360P";
    case 2: return "720P";
    case 3: return "1080P";
    default: return "?";
  }
}

bool TierSelection::is_well_formed(std::size_t num_users) const {
  if (tier_of_user.size() != num_users) return false;
  for (int t : tier_of_user) {
    if (t < 1 || t > kNumTiers) return false;
  }
  return true;
}

std::string TierSelection::to_string() const {
  std::string out;
  for (std::size_t n = 0; n < tier_of_user.size(); ++n) {
    if (n) out += '/';
    out += std::to_string(tier_of_user[n]);
  }
  return out;
}

double PowerVector::total() const { return std::accumulate(watts.begin(), watts.end(), 0.0); }

ScenarioConfig table1_defaults() { return ScenarioConfig{}; }

void validate(const ScenarioConfig& cfg) {
  validate(cfg.link);
  const auto& c = cfg.tiers.required_rates_bps;
  if (!(c[0] > 0.0)) throw ConfigError("required_rates_bps must be positive");
  if (!(c[0] < c[1] && c[1] < c[2])) {
    throw ConfigError("required_rates_bps must be strictly increasing (C1 < C2 < C3)");
  }
  const auto& w = cfg.weights;
  if (!(w.lambda >= 0.0 && w.lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  if (!(w.mu >= 0.0 && w.mu <= 1.0)) throw ConfigError("mu must lie in [0, 1]");
  if (w.lambda + w.mu > 1.0) throw ConfigError("lambda+mu must not exceed 1");
  if (!(w.gamma > 0.0) || !std::isfinite(w.gamma)) throw ConfigError("gamma must be positive");
  if (!(w.r_th_bps > 0.0)) throw ConfigError("r_th_bps must be positive");
  // Zero budget is a valid (infeasible) instance; it is rejected at solve time.
  if (!(w.total_power_w >= 0.0) || !std::isfinite(w.total_power_w)) {
    throw ConfigError("total_power_w must be non-negative");
  }
  if (!(cfg.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

double qos(int tier, const TierTable& tiers, const UtilityWeights& weights) {
  return std::pow(tiers.rate_of(tier) / weights.r_th_bps, weights.gamma);
}

double best_qos(const TierTable& tiers, const UtilityWeights& weights) {
  return qos(kNumTiers, tiers, weights);
}

Normalizers normalizers(const ScenarioConfig& cfg) {
  const double n = static_cast<double>(cfg.num_users());
  return {1.0 / (n * best_qos(cfg.tiers, cfg.weights)), 1.0 / cfg.tiers.rate_of(2),
          1.0 / cfg.weights.total_power_w};
}

double redundancy(std::size_t user, const TierSelection& sel, const PowerVector& p,
                  const ScenarioConfig& cfg) {
  const double achieved = rate(p[user], user_gain(user, cfg.link), cfg.link);
  return cfg.weights.redundancy_sign() * (achieved - cfg.tiers.rate_of(sel[user]));
}

double utility(const TierSelection& sel, const PowerVector& p, const ScenarioConfig& cfg) {
  const auto eta = normalizers(cfg);
  const auto& w = cfg.weights;
  double qos_sum = 0.0, redundancy_sum = 0.0;
  for (std::size_t n = 0; n < cfg.num_users(); ++n) {
    qos_sum += qos(sel[n], cfg.tiers, w);
    redundancy_sum += redundancy(n, sel, p, cfg);
  }
  // The power term is skipped when lambda is zero so that a zero budget
  // (eta_p infinite) does not poison QoS-only evaluations.
  const double power_term = w.lambda == 0.0 ? 0.0 : w.lambda * eta.eta_p * p.total();
  return (1.0 - w.lambda - w.mu) * eta.eta_q * qos_sum - power_term +
         w.mu * eta.eta_r * redundancy_sum;
}

PowerVector min_powers(const TierSelection& sel, const ScenarioConfig& cfg) {
  PowerVector p{std::vector<double>(cfg.num_users())};
  for (std::size_t n = 0; n < cfg.num_users(); ++n) {
    p.watts[n] = min_power(cfg.tiers.rate_of(sel[n]), user_gain(n, cfg.link), cfg.link);
  }
  return p;
}

FeasibilityReport check_feasibility(const TierSelection& sel, const PowerVector& p,
                                    const ScenarioConfig& cfg, double tol) {
  FeasibilityReport report;
  auto fail = [&report](std::string what) {
    report.feasible = false;
    report.violations.push_back(std::move(what));
  };
  const std::size_t n_users = cfg.num_users();
  if (!sel.is_well_formed(n_users)) {
    fail("selection must hold exactly one tier in 1..3 per user");
    return report;
  }
  if (p.size() != n_users) {
    fail("power vector length differs from the number of users");
    return report;
  }
  for (std::size_t n = 0; n < n_users; ++n) {
    if (p[n] < 0.0) {
      fail("user " + std::to_string(n + 1) + ": negative power");
      continue;
    }
    const double required = cfg.tiers.rate_of(sel[n]);
    const double achieved = rate(p[n], user_gain(n, cfg.link), cfg.link);
    if (achieved < required * (1.0 - tol)) {
      std::ostringstream os;
      os << "user " << n + 1 << " rate " << achieved << " bps below required " << required;
      fail(os.str());
    }
  }
  const double budget = cfg.weights.total_power_w;
  if (p.total() > budget * (1.0 + tol)) {
    std::ostringstream os;
    os << "budget: total power " << p.total() << " W exceeds budget " << budget << " W";
    fail(os.str());
  }
  return report;
}

}  // namespace mar
