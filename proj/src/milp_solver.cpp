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

#include "mar/milp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "mar/errors.hpp"

namespace mar {

namespace {

constexpr std::size_t kVarsPerUser = 2 + kNumTiers;

std::size_t power_var(std::size_t user) { return user * kVarsPerUser; }
std::size_t surrogate_var(std::size_t user) { return user * kVarsPerUser + 1; }
std::size_t tier_var(std::size_t user, int tier) {
  return user * kVarsPerUser + 1 + static_cast<std::size_t>(tier);
}

// Per-indicator objective coefficient: s mu eta_r C_i - (1 - lambda - mu) eta_q Q_i.
double tier_cost(int tier, const ScenarioConfig& cfg, const Normalizers& eta) {
  const auto& w = cfg.weights;
  return w.redundancy_sign() * w.mu * eta.eta_r * cfg.tiers.rate_of(tier) -
         (1.0 - w.lambda - w.mu) * eta.eta_q * qos(tier, cfg.tiers, w);
}

lp::LpResult run_lp(const lp::LinearProgram& program) {
  lp::LpResult r = lp::solve(program);
  if (r.status == lp::LpStatus::kIterationLimit) {
    throw SolverError("master LP: simplex iteration guard tripped");
  }
  if (r.status == lp::LpStatus::kUnbounded) {
    throw SolverError("master LP: relaxation unbounded");
  }
  return r;
}

MilpSolution extract(const lp::LpResult& r, const MasterProblem& mp, const TierSelection& sel) {
  const std::size_t n = mp.cfg.num_users();
  const double budget = mp.cfg.weights.total_power_w;
  const double bandwidth = mp.cfg.link.bandwidth_hz;
  MilpSolution s;
  s.selection = sel;
  s.powers.watts.resize(n);
  s.rate_surrogates.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    s.powers.watts[u] = std::max(0.0, r.x[power_var(u)] * budget);
    s.rate_surrogates[u] = r.x[surrogate_var(u)] * bandwidth;
  }
  s.objective = r.objective;
  s.lp_iterations = r.iterations;
  return s;
}

void fix_selection(lp::LinearProgram& program, const TierSelection& sel) {
  for (std::size_t u = 0; u < sel.size(); ++u) {
    for (int t = 1; t <= kNumTiers; ++t) {
      const double v = sel[u] == t ? 1.0 : 0.0;
      program.lower[tier_var(u, t)] = v;
      program.upper[tier_var(u, t)] = v;
    }
  }
}

void require_master_ready(const MasterProblem& mp) {
  validate(mp.cfg);
  if (!(mp.cfg.weights.total_power_w > 0.0)) {
    throw InfeasibleError("master infeasible: total power budget is zero");
  }
  for (std::size_t u = 0; u < mp.cuts.size(); ++u) {
    if (mp.cuts[u].empty()) {
      throw ConfigError("master problem: user " + std::to_string(u + 1) + " has no rate cut");
    }
  }
}

struct Node {
  std::vector<double> lower, upper;
  double bound = -std::numeric_limits<double>::infinity();
  int id = 0;
};

// After fixing indicators, propagate the one-hot row of `user`.
void propagate_one_hot(Node& node, std::size_t user) {
  int fixed_one = 0, free_count = 0;
  int last_free = 0;
  for (int t = 1; t <= kNumTiers; ++t) {
    const std::size_t j = tier_var(user, t);
    if (node.lower[j] == 1.0) fixed_one = t;
    if (node.lower[j] != node.upper[j]) {
      ++free_count;
      last_free = t;
    }
  }
  if (fixed_one) {
    for (int t = 1; t <= kNumTiers; ++t) {
      if (t != fixed_one) node.upper[tier_var(user, t)] = 0.0;
    }
  } else if (free_count == 1) {
    node.lower[tier_var(user, last_free)] = 1.0;
  }
}

}  // namespace

std::vector<RateCut> linearize_rate(const PowerVector& point, const ScenarioConfig& cfg) {
  std::vector<RateCut> cuts(point.size());
  for (std::size_t u = 0; u < point.size(); ++u) {
    const double p0 = std::max(0.0, point[u]);
    const double g = user_gain(u, cfg.link);
    cuts[u] = {u, rate(p0, g, cfg.link), rate_slope(p0, g, cfg.link), p0};
  }
  return cuts;
}

MasterProblem::MasterProblem(ScenarioConfig config)
    : cfg(std::move(config)), cuts(cfg.num_users()) {}

void MasterProblem::add_cuts(const std::vector<RateCut>& new_cuts) {
  for (const auto& c : new_cuts) {
    if (c.user >= cuts.size()) throw ConfigError("rate cut for unknown user");
    cuts[c.user].push_back(c);
  }
}

std::size_t MasterProblem::num_cuts() const {
  std::size_t total = 0;
  for (const auto& per_user : cuts) total += per_user.size();
  return total;
}

lp::LinearProgram build_master_lp(const MasterProblem& mp) {
  const auto& cfg = mp.cfg;
  const std::size_t n = cfg.num_users();
  const double budget = cfg.weights.total_power_w;
  const double bandwidth = cfg.link.bandwidth_hz;
  const auto eta = normalizers(cfg);
  const auto& w = cfg.weights;

  lp::LinearProgram program;
  for (std::size_t u = 0; u < n; ++u) {
    program.add_variable(w.lambda, 0.0, 1.0);
    program.add_variable(-w.redundancy_sign() * w.mu * eta.eta_r * bandwidth, 0.0, lp::kInf);
    for (int t = 1; t <= kNumTiers; ++t) program.add_variable(tier_cost(t, cfg, eta), 0.0, 1.0);
  }
  const std::size_t nv = program.num_vars();
  for (std::size_t u = 0; u < n; ++u) {
    for (const auto& cut : mp.cuts[u]) {
      std::vector<double> row(nv, 0.0);
      row[surrogate_var(u)] = 1.0;
      row[power_var(u)] = -cut.slope_bps_per_w * budget / bandwidth;
      program.add_row(std::move(row), lp::RowSense::kLessEqual,
                      (cut.intercept_bps - cut.slope_bps_per_w * cut.linearization_point) /
                          bandwidth);
    }
    std::vector<double> demand(nv, 0.0);
    demand[surrogate_var(u)] = -1.0;
    for (int t = 1; t <= kNumTiers; ++t) demand[tier_var(u, t)] = cfg.tiers.rate_of(t) / bandwidth;
    program.add_row(std::move(demand), lp::RowSense::kLessEqual, 0.0);

    std::vector<double> one_hot(nv, 0.0);
    for (int t = 1; t <= kNumTiers; ++t) one_hot[tier_var(u, t)] = 1.0;
    program.add_row(std::move(one_hot), lp::RowSense::kEqual, 1.0);
  }
  std::vector<double> total(nv, 0.0);
  for (std::size_t u = 0; u < n; ++u) total[power_var(u)] = 1.0;
  program.add_row(std::move(total), lp::RowSense::kLessEqual, 1.0);
  return program;
}

MilpSolution solve_master_fixed(const MasterProblem& mp, const TierSelection& sel) {
  require_master_ready(mp);
  if (!sel.is_well_formed(mp.cfg.num_users())) {
    throw ConfigError("selection must assign one tier in 1..3 to each user");
  }
  auto program = build_master_lp(mp);
  fix_selection(program, sel);
  const auto r = run_lp(program);
  if (r.status != lp::LpStatus::kOptimal) {
    throw InfeasibleError("master infeasible at selection " + sel.to_string());
  }
  auto s = extract(r, mp, sel);
  s.nodes_explored = 1;
  return s;
}

MilpSolution solve_master(const MasterProblem& mp, const MilpOptions& options) {
  require_master_ready(mp);
  const std::size_t n = mp.cfg.num_users();
  const auto base = build_master_lp(mp);

  double incumbent = std::numeric_limits<double>::infinity();
  MilpSolution best;
  int nodes = 0, lp_iterations = 0, next_id = 1;
  std::vector<Node> open;
  std::optional<Node> current = Node{base.lower, base.upper, -std::numeric_limits<double>::infinity(), 0};

  while (true) {
    if (!current) {
      // Backtrack to the open node with the best bound.
      if (open.empty()) break;
      auto it = std::min_element(open.begin(), open.end(), [](const Node& a, const Node& b) {
        return a.bound < b.bound || (a.bound == b.bound && a.id < b.id);
      });
      Node node = std::move(*it);
      open.erase(it);
      if (node.bound >= incumbent - options.prune_tol) continue;
      current = std::move(node);
    }
    if (++nodes > options.max_nodes) throw SolverError("branch and bound node limit reached");
    auto program = base;
    program.lower = current->lower;
    program.upper = current->upper;
    const auto r = run_lp(program);
    lp_iterations += r.iterations;
    if (r.status != lp::LpStatus::kOptimal || r.objective >= incumbent - options.prune_tol) {
      current.reset();
      continue;
    }

    // Most fractional indicator, ties to the lowest (user, tier).
    std::size_t branch = 0;
    double best_frac = options.integer_tol;
    bool fractional = false;
    for (std::size_t u = 0; u < n; ++u) {
      for (int t = 1; t <= kNumTiers; ++t) {
        const double v = r.x[tier_var(u, t)];
        const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
        if (frac > best_frac) {
          best_frac = frac;
          branch = tier_var(u, t);
          fractional = true;
        }
      }
    }

    if (!fractional) {
      TierSelection sel{std::vector<int>(n, 1)};
      for (std::size_t u = 0; u < n; ++u) {
        for (int t = 1; t <= kNumTiers; ++t) {
          if (r.x[tier_var(u, t)] > 0.5) sel.tier_of_user[u] = t;
        }
      }
      auto fixed = base;
      fix_selection(fixed, sel);
      const auto leaf = run_lp(fixed);
      lp_iterations += leaf.iterations;
      if (leaf.status == lp::LpStatus::kOptimal && leaf.objective < incumbent) {
        incumbent = leaf.objective;
        best = extract(leaf, mp, sel);
      }
      current.reset();
      continue;
    }

    const std::size_t user = branch / kVarsPerUser;
    Node down{current->lower, current->upper, r.objective, next_id++};
    down.upper[branch] = 0.0;
    propagate_one_hot(down, user);
    Node up{current->lower, current->upper, r.objective, next_id++};
    up.lower[branch] = 1.0;
    propagate_one_hot(up, user);
    if (r.x[branch] >= 0.5) {
      open.push_back(std::move(down));
      current = std::move(up);
    } else {
      open.push_back(std::move(up));
      current = std::move(down);
    }
  }

  if (!std::isfinite(incumbent)) {
    throw InfeasibleError("master infeasible: no tier selection satisfies the rate cuts within "
                          "the power budget");
  }
  best.nodes_explored = nodes;
  best.lp_iterations = lp_iterations;
  return best;
}

MilpSolution brute_force_master(const MasterProblem& mp) {
  require_master_ready(mp);
  const std::size_t n = mp.cfg.num_users();
  if (n > 10) throw ConfigError("brute force master supports at most 10 users");
  const auto base = build_master_lp(mp);
  TierSelection sel{std::vector<int>(n, 1)};
  MilpSolution best;
  double incumbent = std::numeric_limits<double>::infinity();
  int count = 0;
  while (true) {
    auto program = base;
    fix_selection(program, sel);
    const auto r = run_lp(program);
    ++count;
    if (r.status == lp::LpStatus::kOptimal && r.objective < incumbent) {
      incumbent = r.objective;
      best = extract(r, mp, sel);
    }
    // Odometer over selections, last user fastest.
    std::size_t u = n;
    while (u > 0 && sel.tier_of_user[u - 1] == kNumTiers) sel.tier_of_user[--u] = 1;
    if (u == 0) break;
    ++sel.tier_of_user[u - 1];
  }
  if (!std::isfinite(incumbent)) {
    throw InfeasibleError("master infeasible: no tier selection satisfies the rate cuts within "
                          "the power budget");
  }
  best.nodes_explored = count;
  return best;
}

void write_lp_listing(std::ostream& os, const MasterProblem& mp) {
  const auto& cfg = mp.cfg;
  const std::size_t n = cfg.num_users();
  const auto eta = normalizers(cfg);
  const auto& w = cfg.weights;
  const auto old_precision = os.precision(12);
  os << "\\ linearized master: " << n << " users, " << mp.num_cuts() << " rate cuts\n";
  os << "\\ p_n in W, t_n in bps, I_n_i binary\n";
  os << "minimize\n obj:";
  for (std::size_t u = 0; u < n; ++u) {
    os << ' ' << std::showpos << w.lambda * eta.eta_p << std::noshowpos << " p" << u + 1;
    os << ' ' << std::showpos << -w.redundancy_sign() * w.mu * eta.eta_r << std::noshowpos
       << " t" << u + 1;
    for (int t = 1; t <= kNumTiers; ++t) {
      os << ' ' << std::showpos << tier_cost(t, cfg, eta) << std::noshowpos << " I" << u + 1
         << '_' << t;
    }
  }
  os << "\nsubject to\n";
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t k = 0; k < mp.cuts[u].size(); ++k) {
      const auto& c = mp.cuts[u][k];
      os << " cut" << u + 1 << '_' << k + 1 << ": t" << u + 1 << ' ' << std::showpos
         << -c.slope_bps_per_w << std::noshowpos << " p" << u + 1
         << " <= " << c.intercept_bps - c.slope_bps_per_w * c.linearization_point << '\n';
    }
    os << " demand" << u + 1 << ":";
    for (int t = 1; t <= kNumTiers; ++t) {
      os << ' ' << std::showpos << cfg.tiers.rate_of(t) << std::noshowpos << " I" << u + 1
         << '_' << t;
    }
    os << " -1 t" << u + 1 << " <= 0\n";
    os << " onehot" << u + 1 << ": I" << u + 1 << "_1 + I" << u + 1 << "_2 + I" << u + 1
       << "_3 = 1\n";
  }
  os << " budget:";
  for (std::size_t u = 0; u < n; ++u) os << (u ? " + p" : " p") << u + 1;
  os << " <= " << w.total_power_w << "\nbounds\n";
  for (std::size_t u = 0; u < n; ++u) {
    os << " 0 <= p" << u + 1 << " <= " << w.total_power_w << "\n t" << u + 1 << " >= 0\n";
  }
  os << "binary\n";
  for (std::size_t u = 0; u < n; ++u) {
    os << ' ' << "I" << u + 1 << "_1 I" << u + 1 << "_2 I" << u + 1 << "_3\n";
  }
  os << "end\n";
  os.precision(old_precision);
}

}  // namespace mar
