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
#include <vector>

#include "mar/model.hpp"
#include "mar/simplex.hpp"

namespace mar {

/// Tangent of a user's Shannon rate at `linearization_point`:
/// rate(p) <= intercept_bps + slope_bps_per_w * (p - linearization_point).
struct RateCut {
  std::size_t user = 0;
  double intercept_bps = 0.0;
  double slope_bps_per_w = 0.0;
  double linearization_point = 0.0;

  double value_at(double power_w) const {
    return intercept_bps + slope_bps_per_w * (power_w - linearization_point);
  }
};

/// One tangent per user at `point`.
std::vector<RateCut> linearize_rate(const PowerVector& point, const ScenarioConfig& cfg);

/// Linearized master problem. Each user's rate is replaced by a surrogate
/// t_n bounded above by all of that user's cuts.
struct MasterProblem {
  ScenarioConfig cfg;
  std::vector<std::vector<RateCut>> cuts;  // indexed by user

  explicit MasterProblem(ScenarioConfig config);
  void add_cuts(const std::vector<RateCut>& new_cuts);
  std::size_t num_cuts() const;
};

struct MilpSolution {
  TierSelection selection;
  PowerVector powers;
  std::vector<double> rate_surrogates;  // t_n, bps
  double objective = 0.0;
  int nodes_explored = 0;
  int lp_iterations = 0;
};

struct MilpOptions {
  double integer_tol = 1e-6;
  double prune_tol = 1e-9;
  int max_nodes = 100000;
};

/// Exact optimum by LP-based branch and bound. Throws InfeasibleError when
/// no selection admits a point, SolverError when the LP core fails.
MilpSolution solve_master(const MasterProblem& mp, const MilpOptions& options = {});

/// Enumerates all 3^N selections and solves one LP each. N <= 10.
MilpSolution brute_force_master(const MasterProblem& mp);

/// Best point of the master with every tier fixed to `sel`.
MilpSolution solve_master_fixed(const MasterProblem& mp, const TierSelection& sel);

/// The LP relaxation in scaled units (powers / P, rates / B). Exposed for
/// inspection and tests; variable order per user is p, t, I1, I2, I3.
lp::LinearProgram build_master_lp(const MasterProblem& mp);

/// Plain-text LP-style listing of the master in physical units.
void write_lp_listing(std::ostream& os, const MasterProblem& mp);

}  // namespace mar
