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

#include "mar/mar.h"

#include <algorithm>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>

#include "mar/config.hpp"
#include "mar/errors.hpp"
#include "mar/greedy.hpp"
#include "mar/oa.hpp"

struct mar_scenario {
  mar::ScenarioConfig cfg;
};

struct mar_outcome {
  mar::SolveOutcome outcome;
  mar::OaTrace trace;
  std::string master_listing;
};

namespace {

thread_local std::string g_last_error;

mar_status fail(mar_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Maps the C++ exception hierarchy onto status codes.
template <typename F>
mar_status guarded(F&& body) {
  try {
    body();
    return MAR_OK;
  } catch (const mar::OaIterationLimit& e) {
    return fail(MAR_ERR_SOLVER, e.what());
  } catch (const mar::ConfigError& e) {
    return fail(MAR_ERR_CONFIG, e.what());
  } catch (const mar::InfeasibleError& e) {
    return fail(MAR_ERR_INFEASIBLE, e.what());
  } catch (const mar::SolverError& e) {
    return fail(MAR_ERR_SOLVER, e.what());
  } catch (const std::exception& e) {
    return fail(MAR_ERR_SOLVER, e.what());
  } catch (...) {
    return fail(MAR_ERR_SOLVER, "unknown error");
  }
}

size_t copy_out(const std::string& text, char* buf, size_t cap) {
  if (buf && cap > 0) {
    const size_t n = std::min(cap - 1, text.size());
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
  }
  return text.size();
}

}  // namespace

extern "C" {

const char* mar_last_error(void) { return g_last_error.c_str(); }

const char* mar_status_name(mar_status status) {
  switch (status) {
    case MAR_OK: return "ok";
    case MAR_ERR_USAGE: return "usage";
    case MAR_ERR_CONFIG: return "config invalid";
    case MAR_ERR_INFEASIBLE: return "infeasible";
    case MAR_ERR_SOLVER: return "solver failure";
  }
  return "unknown";
}

mar_status mar_scenario_default(mar_scenario** out) {
  if (!out) return fail(MAR_ERR_USAGE, "null output pointer");
  return guarded([&] { *out = new mar_scenario{mar::table1_defaults()}; });
}

mar_status mar_scenario_load(const char* path, mar_scenario** out) {
  if (!path || !out) return fail(MAR_ERR_USAGE, "null argument");
  return guarded([&] { *out = new mar_scenario{mar::load_config(path)}; });
}

mar_status mar_scenario_parse(const char* text, mar_scenario** out) {
  if (!text || !out) return fail(MAR_ERR_USAGE, "null argument");
  return guarded([&] { *out = new mar_scenario{mar::parse_config(text)}; });
}

mar_status mar_scenario_clone(const mar_scenario* scenario, mar_scenario** out) {
  if (!scenario || !out) return fail(MAR_ERR_USAGE, "null argument");
  return guarded([&] { *out = new mar_scenario{scenario->cfg}; });
}

void mar_scenario_free(mar_scenario* scenario) { delete scenario; }

mar_status mar_scenario_set(mar_scenario* scenario, const char* key, double value) {
  if (!scenario || !key) return fail(MAR_ERR_USAGE, "null argument");
  return guarded([&] {
    mar::ScenarioConfig next = scenario->cfg;
    mar::set_scalar(next, key, value);
    mar::validate(next);
    scenario->cfg = std::move(next);
  });
}

mar_status mar_scenario_get(const mar_scenario* scenario, const char* key, double* value) {
  if (!scenario || !key || !value) return fail(MAR_ERR_USAGE, "null argument");
  return guarded([&] { *value = mar::get_scalar(scenario->cfg, key); });
}

mar_status mar_scenario_set_redundancy(mar_scenario* scenario, mar_redundancy convention) {
  if (!scenario) return fail(MAR_ERR_USAGE, "null scenario");
  switch (convention) {
    case MAR_REDUNDANCY_REWARD:
      scenario->cfg.weights.redundancy_convention = mar::RedundancyConvention::kReward;
      return MAR_OK;
    case MAR_REDUNDANCY_PAPER:
      scenario->cfg.weights.redundancy_convention = mar::RedundancyConvention::kPaperLiteral;
      return MAR_OK;
  }
  return fail(MAR_ERR_USAGE, "unknown redundancy convention");
}

mar_redundancy mar_scenario_redundancy(const mar_scenario* scenario) {
  return scenario && scenario->cfg.weights.redundancy_convention ==
                         mar::RedundancyConvention::kPaperLiteral
             ? MAR_REDUNDANCY_PAPER
             : MAR_REDUNDANCY_REWARD;
}

size_t mar_scenario_num_users(const mar_scenario* scenario) {
  return scenario ? scenario->cfg.num_users() : 0;
}

mar_status mar_user_distance(const mar_scenario* scenario, size_t user, double* meters) {
  if (!scenario || !meters) return fail(MAR_ERR_USAGE, "null argument");
  if (user >= scenario->cfg.num_users()) return fail(MAR_ERR_USAGE, "user index out of range");
  return guarded([&] { *meters = mar::user_distance(user, scenario->cfg.link); });
}

mar_status mar_user_gain(const mar_scenario* scenario, size_t user, double* gain) {
  if (!scenario || !gain) return fail(MAR_ERR_USAGE, "null argument");
  if (user >= scenario->cfg.num_users()) return fail(MAR_ERR_USAGE, "user index out of range");
  return guarded([&] { *gain = mar::user_gain(user, scenario->cfg.link); });
}

mar_status mar_min_power(const mar_scenario* scenario, size_t user, int tier, double* watts) {
  if (!scenario || !watts) return fail(MAR_ERR_USAGE, "null argument");
  if (user >= scenario->cfg.num_users()) return fail(MAR_ERR_USAGE, "user index out of range");
  if (tier < 1 || tier > mar::kNumTiers) return fail(MAR_ERR_USAGE, "tier must be 1..3");
  return guarded([&] {
    const auto& cfg = scenario->cfg;
    *watts = mar::min_power(cfg.tiers.rate_of(tier), mar::user_gain(user, cfg.link), cfg.link);
  });
}

size_t mar_scenario_to_text(const mar_scenario* scenario, char* buf, size_t cap) {
  if (!scenario) return 0;
  std::ostringstream os;
  mar::write_config(os, scenario->cfg);
  return copy_out(os.str(), buf, cap);
}

mar_status mar_solve_oa(const mar_scenario* scenario, mar_outcome** out) {
  if (!scenario || !out) return fail(MAR_ERR_USAGE, "null argument");
  return guarded([&] {
    auto result = mar::oa_solve(scenario->cfg);
    std::ostringstream listing;
    mar::write_lp_listing(listing, result.master);
    *out = new mar_outcome{std::move(result.outcome), std::move(result.trace), listing.str()};
  });
}

mar_status mar_solve_greedy(const mar_scenario* scenario, mar_outcome** out) {
  if (!scenario || !out) return fail(MAR_ERR_USAGE, "null argument");
  return guarded([&] { *out = new mar_outcome{mar::greedy_solve(scenario->cfg), {}, {}}; });
}

void mar_outcome_free(mar_outcome* outcome) { delete outcome; }

double mar_outcome_utility(const mar_outcome* o) { return o ? o->outcome.utility : 0.0; }
double mar_outcome_objective(const mar_outcome* o) { return o ? o->outcome.objective : 0.0; }
int mar_outcome_feasible(const mar_outcome* o) { return o && o->outcome.feasible ? 1 : 0; }
size_t mar_outcome_num_users(const mar_outcome* o) { return o ? o->outcome.selection.size() : 0; }

int mar_outcome_tier(const mar_outcome* o, size_t user) {
  if (!o || user >= o->outcome.selection.size()) return 0;
  return o->outcome.selection[user];
}

double mar_outcome_power(const mar_outcome* o, size_t user) {
  if (!o || user >= o->outcome.powers.size()) return 0.0;
  return o->outcome.powers[user];
}

int mar_outcome_iterations(const mar_outcome* o) {
  return o ? o->outcome.diagnostics.iterations : 0;
}

double mar_outcome_gap(const mar_outcome* o) { return o ? o->outcome.diagnostics.final_gap : 0.0; }

size_t mar_outcome_trace_length(const mar_outcome* o) { return o ? o->trace.records.size() : 0; }

mar_status mar_outcome_trace_record(const mar_outcome* o, size_t index, int* iter, double* z_ub,
                                    double* z_lb, double* gap) {
  if (!o) return fail(MAR_ERR_USAGE, "null outcome");
  if (index >= o->trace.records.size()) return fail(MAR_ERR_USAGE, "trace index out of range");
  const auto& r = o->trace.records[index];
  if (iter) *iter = r.iter;
  if (z_ub) *z_ub = r.z_ub;
  if (z_lb) *z_lb = r.z_lb;
  if (gap) *gap = r.gap;
  return MAR_OK;
}

size_t mar_outcome_trace_csv(const mar_outcome* o, char* buf, size_t cap) {
  if (!o) return 0;
  std::ostringstream os;
  mar::write_trace_csv(os, o->trace);
  return copy_out(os.str(), buf, cap);
}

size_t mar_outcome_master_listing(const mar_outcome* o, char* buf, size_t cap) {
  if (!o) return 0;
  return copy_out(o->master_listing, buf, cap);
}

}  // extern "C"
