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

#include "mar/greedy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mar/errors.hpp"

namespace mar {

SolveOutcome greedy_solve(const ScenarioConfig& cfg) {
  validate(cfg);
  const std::size_t n = cfg.num_users();
  const double budget = cfg.weights.total_power_w;
  TierSelection sel{std::vector<int>(n, 1)};
  PowerVector p = min_powers(sel, cfg);
  if (!(budget > 0.0) || p.total() > budget * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "greedy infeasible: serving every user at the lowest tier needs " << p.total()
       << " W but the total power budget is " << budget << " W";
    throw InfeasibleError(os.str());
  }
  const auto gains = user_gains(cfg.link);

  for (std::size_t user = 0; user < n; ++user) {
    double best_utility = -std::numeric_limits<double>::infinity();
    int best_tier = 0;
    double best_power = 0.0;
    for (int tier = 1; tier <= kNumTiers; ++tier) {
      TierSelection trial_sel = sel;
      PowerVector trial_p = p;
      trial_sel.tier_of_user[user] = tier;
      trial_p.watts[user] = min_power(cfg.tiers.rate_of(tier), gains[user], cfg.link);
      const double rest = budget - trial_p.total();
      const double u = utility(trial_sel, trial_p, cfg);
      // Utilities equal up to round-off count as a tie.
      const bool at_least = u >= best_utility - 1e-12 * (1.0 + std::abs(best_utility));
      if (at_least && rest >= -1e-12 * budget) {
        best_utility = u;
        best_tier = tier;
        best_power = trial_p[user];
      }
    }
    if (best_tier == 0) {
      throw InfeasibleError("greedy infeasible: user " + std::to_string(user + 1) +
                            " cannot afford any tier");
    }
    sel.tier_of_user[user] = best_tier;
    p.watts[user] = best_power;
  }

  SolveOutcome out;
  out.selection = sel;
  out.powers = p;
  out.utility = utility(sel, p, cfg);
  out.objective = -out.utility;
  out.feasible = check_feasibility(sel, p, cfg).feasible;
  out.diagnostics.algorithm = "greedy";
  out.diagnostics.iterations = static_cast<int>(n);
  return out;
}

}  // namespace mar
