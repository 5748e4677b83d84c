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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mar/channel.hpp"

namespace mar {

inline constexpr int kNumTiers = 3;

/// Required rates of the three resolution tiers, strictly increasing.
struct TierTable {
  std::array<double, kNumTiers> required_rates_bps{0.77e6, 1.92e6, 3.84e6};

  /// Rate of tier 1..3.
  double rate_of(int tier) const { return required_rates_bps.at(static_cast<std::size_t>(tier - 1)); }
  static const char* label(int tier);
};

/// One resolution tier (1, 2 or 3) per user; the dense form of the one-hot
/// indicator matrix.
struct TierSelection {
  std::vector<int> tier_of_user;

  std::size_t size() const { return tier_of_user.size(); }
  int operator[](std::size_t user) const { return tier_of_user[user]; }
  bool is_well_formed(std::size_t num_users) const;
  /// "1/1/2/3/3"
  std::string to_string() const;
  auto operator<=>(const TierSelection&) const = default;
};

/// Transmit power per user, in watts.
struct PowerVector {
  std::vector<double> watts;

  std::size_t size() const { return watts.size(); }
  double operator[](std::size_t user) const { return watts[user]; }
  double total() const;
};

/// Sign convention of the rate-redundancy term.
enum class RedundancyConvention {
  kReward,        // achieved rate minus requirement; extra rate is rewarded
  kPaperLiteral,  // requirement minus achieved rate, as the equation is printed
};

struct UtilityWeights {
  double lambda = 0.1;  // concern for energy
  double mu = 0.1;      // concern for rate redundancy
  double gamma = 2.0;   // QoS exponent
  double r_th_bps = 0.77e6;
  double total_power_w = 50.0;
  RedundancyConvention redundancy_convention = RedundancyConvention::kReward;

  /// +1 for kReward, -1 for kPaperLiteral.
  double redundancy_sign() const {
    return redundancy_convention == RedundancyConvention::kReward ? 1.0 : -1.0;
  }
};

struct ScenarioConfig {
  LinkModel link;
  TierTable tiers;
  UtilityWeights weights;
  double epsilon = 1e-3;

  std::size_t num_users() const { return link.num_users(); }
};

/// Reference scenario constants with D_f = 5, P = 50 W, lambda = mu = 0.1.
ScenarioConfig table1_defaults();

/// Throws ConfigError naming the first violated invariant.
void validate(const ScenarioConfig& cfg);

/// Solver-specific counters attached to an outcome.
struct SolveDiagnostics {
  std::string algorithm;
  int iterations = 0;
  double final_gap = 0.0;
  std::string note;
};

struct SolveOutcome {
  TierSelection selection;
  PowerVector powers;
  double utility = 0.0;
  double objective = 0.0;  // minimization value, always -utility
  bool feasible = false;
  SolveDiagnostics diagnostics;
};

double qos(int tier, const TierTable& tiers, const UtilityWeights& weights);
double best_qos(const TierTable& tiers, const UtilityWeights& weights);

struct Normalizers {
  double eta_q;  // 1 / (N Q0)
  double eta_r;  // 1 / C2
  double eta_p;  // 1 / P
};
Normalizers normalizers(const ScenarioConfig& cfg);

/// Rate redundancy of `user` under the configured convention, in bps.
double redundancy(std::size_t user, const TierSelection& sel, const PowerVector& p,
                  const ScenarioConfig& cfg);

/// Utility of (sel, p); defined for infeasible points as well.
double utility(const TierSelection& sel, const PowerVector& p, const ScenarioConfig& cfg);

/// Minimization objective of the joint problem, -utility.
inline double objective(const TierSelection& sel, const PowerVector& p,
                        const ScenarioConfig& cfg) {
  return -utility(sel, p, cfg);
}

/// Per-tier minimum powers for a selection.
PowerVector min_powers(const TierSelection& sel, const ScenarioConfig& cfg);

struct FeasibilityReport {
  bool feasible = true;
  std::vector<std::string> violations;
};

/// Checks per-user rate requirements, the total budget and the one-hot
/// structure with relative tolerance `tol`.
FeasibilityReport check_feasibility(const TierSelection& sel, const PowerVector& p,
                                    const ScenarioConfig& cfg, double tol = 1e-9);

}  // namespace mar
