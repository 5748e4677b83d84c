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

#include <vector>

#include "mar/model.hpp"

namespace mar {

// Fixed-selection power allocation: with the tiers held fixed, minimize
//
//   lambda eta_p sum p_n - s mu eta_r sum (r_n(p_n) - C_n) - A1
//
// subject to r_n(p_n) - C_n = slack_n >= 0 and P - sum p_n >= 0, where s is
// the redundancy sign and A1 the constant QoS term. Under the reward
// convention the objective is convex; the solver is a primal-dual
// log-barrier Newton method.
//
// Internally every rate is divided by B and every power by P, so the duals
// and the barrier parameter of NlpIterate refer to that normalized system.

struct NlpIterate {
  PowerVector p;
  std::vector<double> slack_bps;     // r_n - C_n - per-user slack
  std::vector<double> dual;          // z_n, normalized
  double budget_slack_w = 0.0;       // P - sum p
  double budget_dual = 0.0;          // z_0, normalized
  double tau = 0.0;
};

struct NlpOptions {
  double tau_initial = 1.0;
  double tau_factor = 0.1;
  double tau_final = 1e-12;
  double centering = 0.1;          // advance tau once ||F_tau||_inf <= centering * tau
  double fraction_to_boundary = 0.995;
  double armijo = 1e-4;
  int max_backtracks = 30;
  int max_newton_steps = 100;
};

struct CentralPoint {
  double tau;
  double objective;
};

struct NlpResult {
  PowerVector p_opt;
  double objective = 0.0;      // includes -A1, equals the joint objective at (sel, p_opt)
  double kkt_residual = 0.0;   // at tau = 0
  int iterations = 0;          // Newton steps
  double max_complementarity = 0.0;
  double tau_final = 0.0;
  std::vector<CentralPoint> central_path;
  NlpIterate final_iterate;
};

/// (1 - lambda - mu) eta_q sum_n Q_sel(n).
double subproblem_constant(const TierSelection& sel, const ScenarioConfig& cfg);

/// Log-barrier function in physical units. Throws std::domain_error on a
/// boundary iterate when tau > 0.
double barrier_value(const NlpIterate& it, const TierSelection& sel, const ScenarioConfig& cfg);

/// Max-norm of stationarity, primal and complementarity residuals of the
/// barrier KKT system at it.tau, in normalized units.
double kkt_residual(const NlpIterate& it, const TierSelection& sel, const ScenarioConfig& cfg);

/// Throws InfeasibleError when the per-tier minimum powers exceed the
/// budget, SolverError when the Newton budget is exhausted.
NlpResult solve_fixed_selection(const TierSelection& sel, const ScenarioConfig& cfg,
                                const NlpOptions& options = {});

/// Closed-form KKT solution with the budget multiplier found by bisection.
PowerVector analytic_power_oracle(const TierSelection& sel, const ScenarioConfig& cfg);

}  // namespace mar
