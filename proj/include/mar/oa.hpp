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
#include <optional>
#include <vector>

#include "mar/errors.hpp"
#include "mar/milp_solver.hpp"
#include "mar/model.hpp"
#include "mar/nlp_solver.hpp"

namespace mar {

struct OaRecord {
  int iter = 0;
  double z_ub = 0.0;           // incumbent upper bound after this iteration
  double z_lb = 0.0;           // master optimum of this iteration
  double gap = 0.0;            // |z_ub - z_lb|
  TierSelection selection;     // selection whose fixed-tier problem was solved
  double nlp_objective = 0.0;  // +inf when that selection was infeasible
};

struct OaTrace {
  std::vector<OaRecord> records;
};

/// Writes `iter,z_ub,z_lb,gap,selection` rows with 9 significant digits.
void write_trace_csv(std::ostream& os, const OaTrace& trace);

struct OaOptions {
  int max_iterations = 50;
  NlpOptions nlp;
  MilpOptions milp;
};

struct OaResult {
  SolveOutcome outcome;
  OaTrace trace;
  MasterProblem master;  // final master, with every accumulated cut
};

/// Raised when the iteration cap is hit; carries the trace so far.
class OaIterationLimit : public SolverError {
 public:
  OaIterationLimit(const std::string& what, OaTrace trace)
      : SolverError(what), trace_(std::move(trace)) {}
  const OaTrace& trace() const { return trace_; }

 private:
  OaTrace trace_;
};

/// Every user at tier 1.
TierSelection initial_selection(const ScenarioConfig& cfg);

double gap(double z_ub, double z_lb);

/// Outer approximation: alternate fixed-tier NLP solves (upper bounds) and
/// the cut-accumulating master (lower bounds) until the gap is within
/// cfg.epsilon or the master proposes an already visited selection.
OaResult oa_solve(const ScenarioConfig& cfg, std::optional<TierSelection> i0 = std::nullopt,
                  const OaOptions& options = {});

}  // namespace mar
