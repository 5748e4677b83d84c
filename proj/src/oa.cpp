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

#include "mar/oa.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace mar {

namespace {

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& os, const OaTrace& trace) {
  os << "iter,z_ub,z_lb,gap,selection\n";
  for (const auto& r : trace.records) {
    os << r.iter << ',' << fmt9(r.z_ub) << ',' << fmt9(r.z_lb) << ',' << fmt9(r.gap) << ','
       << r.selection.to_string() << '\n';
  }
}

TierSelection initial_selection(const ScenarioConfig& cfg) {
  return TierSelection{std::vector<int>(cfg.num_users(), 1)};
}

double gap(double z_ub, double z_lb) { return std::abs(z_ub - z_lb); }

OaResult oa_solve(const ScenarioConfig& cfg, std::optional<TierSelection> i0,
                  const OaOptions& options) {
  validate(cfg);
  const TierSelection lowest = initial_selection(cfg);
  {
    const double need = min_powers(lowest, cfg).total();
    if (!(cfg.weights.total_power_w > 0.0) || need > cfg.weights.total_power_w * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "scenario infeasible: serving every user at the lowest tier needs " << need
         << " W but the total power budget is " << cfg.weights.total_power_w << " W";
      throw InfeasibleError(os.str());
    }
  }
  TierSelection sel = i0.value_or(lowest);
  if (!sel.is_well_formed(cfg.num_users())) {
    throw ConfigError("initial selection must assign one tier in 1..3 to each user");
  }

  OaResult result{{}, {}, MasterProblem(cfg)};
  std::set<TierSelection> visited;
  double incumbent = std::numeric_limits<double>::infinity();
  NlpResult best_nlp;
  TierSelection best_sel;
  std::string note = "gap closed";

  for (int t = 1;; ++t) {
    if (t > options.max_iterations) {
      throw OaIterationLimit("outer approximation hit the iteration cap of " +
                                 std::to_string(options.max_iterations),
                             result.trace);
    }
    OaRecord rec;
    rec.iter = t;
    rec.selection = sel;
    visited.insert(sel);
    try {
      NlpResult nlp = solve_fixed_selection(sel, cfg, options.nlp);
      rec.nlp_objective = nlp.objective;
      result.master.add_cuts(linearize_rate(nlp.p_opt, cfg));
      if (nlp.objective < incumbent) {
        incumbent = nlp.objective;
        best_nlp = std::move(nlp);
        best_sel = sel;
      }
    } catch (const InfeasibleError&) {
      // Tangents at the tier minima exclude this selection from the master.
      rec.nlp_objective = std::numeric_limits<double>::infinity();
      result.master.add_cuts(linearize_rate(min_powers(sel, cfg), cfg));
    }

    const MilpSolution master = solve_master(result.master, options.milp);
    rec.z_ub = incumbent;
    rec.z_lb = master.objective;
    rec.gap = gap(incumbent, master.objective);
    result.trace.records.push_back(rec);

    if (rec.gap <= cfg.epsilon) break;
    if (visited.contains(master.selection)) {
      note = "master repeated a visited selection";
      break;
    }
    sel = master.selection;
  }

  auto& out = result.outcome;
  out.selection = best_sel;
  out.powers = best_nlp.p_opt;
  out.objective = best_nlp.objective;
  out.utility = -best_nlp.objective;
  out.feasible = check_feasibility(best_sel, best_nlp.p_opt, cfg).feasible;
  out.diagnostics.algorithm = "oa";
  out.diagnostics.iterations = static_cast<int>(result.trace.records.size());
  out.diagnostics.final_gap = result.trace.records.back().gap;
  out.diagnostics.note = note;
  return result;
}

}  // namespace mar
