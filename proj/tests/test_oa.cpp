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

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mar/greedy.hpp"
#include "mar/oa.hpp"
#include "test_support.hpp"

using namespace mar;
using doctest::Approx;

namespace {

void check_trace(const OaTrace& trace) {
  REQUIRE_FALSE(trace.records.empty());
  for (std::size_t t = 0; t < trace.records.size(); ++t) {
    const OaRecord& r = trace.records[t];
    CHECK(r.iter == static_cast<int>(t + 1));
    if (std::isfinite(r.z_ub)) CHECK(r.gap == Approx(std::abs(r.z_ub - r.z_lb)));
    CHECK(r.z_lb <= r.z_ub + 1e-9);
    if (t > 0) {
      CHECK(r.z_lb >= trace.records[t - 1].z_lb - 1e-9);
      CHECK(r.z_ub <= trace.records[t - 1].z_ub);
    }
  }
}

// Best objective over every feasible selection, each solved by the NLP.
double enumerate_optimum(const ScenarioConfig& cfg) {
  const std::size_t n = cfg.num_users();
  TierSelection sel{std::vector<int>(n, 1)};
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    if (min_powers(sel, cfg).total() <= cfg.weights.total_power_w) {
      best = std::min(best, solve_fixed_selection(sel, cfg).objective);
    }
    std::size_t u = n;
    while (u > 0 && sel.tier_of_user[u - 1] == kNumTiers) sel.tier_of_user[--u] = 1;
    if (u == 0) break;
    ++sel.tier_of_user[u - 1];
  }
  return best;
}

}  // namespace

TEST_CASE("gap and initial selection") {
  CHECK(gap(3.0, 3.0) == 0.0);
  CHECK(gap(-1.2, -1.5) == Approx(0.3));
  CHECK(gap(-1.5, -1.2) == gap(-1.2, -1.5));
  ScenarioConfig cfg = table1_defaults();
  CHECK(initial_selection(cfg).to_string() == "1/1/1/1/1");
  cfg.link.reference_distances_m = {4.0};
  CHECK(initial_selection(cfg).to_string() == "1");
}

TEST_CASE("single user with exactly the tier-1 budget") {
  ScenarioConfig cfg = table1_defaults();
  cfg.link.reference_distances_m = {3.0};
  testing::budget_for(cfg, initial_selection(cfg), 1.0);
  const OaResult r = oa_solve(cfg);
  CHECK(r.trace.records.size() == 1);
  CHECK(r.outcome.selection.to_string() == "1");
  CHECK(r.outcome.powers[0] == Approx(min_powers(r.outcome.selection, cfg)[0]).epsilon(1e-12));
  CHECK(r.trace.records[0].gap <= 1e-12);
  CHECK(r.outcome.feasible);
}

TEST_CASE("default scenario converges quickly and beats greedy") {
  const ScenarioConfig cfg = table1_defaults();
  const OaResult r = oa_solve(cfg);
  check_trace(r.trace);
  CHECK(r.trace.records.size() <= 5);
  CHECK(r.outcome.diagnostics.final_gap <= cfg.epsilon);
  CHECK(r.outcome.feasible);
  CHECK(r.outcome.utility == Approx(-r.outcome.objective));
  CHECK(r.outcome.utility >= greedy_solve(cfg).utility - 1e-9);
  CHECK(r.master.num_cuts() >= 5);
}

TEST_CASE("infeasible scenarios and bad starting points") {
  ScenarioConfig cfg = table1_defaults();
  cfg.weights.total_power_w = 0.0;
  CHECK_THROWS_AS(oa_solve(cfg), InfeasibleError);
  cfg.weights.total_power_w = 10.0;
  CHECK_THROWS_AS(oa_solve(cfg), InfeasibleError);
  CHECK_THROWS_AS(oa_solve(table1_defaults(), TierSelection{{1, 1}}), ConfigError);
}

TEST_CASE("an infeasible starting selection is cut away") {
  ScenarioConfig cfg = table1_defaults();
  cfg.weights.total_power_w = 30.0;
  const TierSelection top{std::vector<int>(5, 3)};
  REQUIRE(min_powers(top, cfg).total() > cfg.weights.total_power_w);
  const OaResult r = oa_solve(cfg, top);
  REQUIRE(r.trace.records.size() >= 2);
  CHECK(std::isinf(r.trace.records[0].nlp_objective));
  CHECK(r.trace.records[1].selection != top);
  CHECK(r.outcome.feasible);
  CHECK(std::abs(r.outcome.objective - oa_solve(cfg).outcome.objective) <= cfg.epsilon);

  OaOptions capped;
  capped.max_iterations = 1;
  try {
    oa_solve(cfg, top, capped);
    FAIL("expected OaIterationLimit");
  } catch (const OaIterationLimit& e) {
    CHECK(e.trace().records.size() == 1);
  }
}

TEST_CASE("random scenarios: certified optimum and dominance over greedy") {
  std::mt19937_64 rng(51);
  int solved = 0;
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = 1 + k % 4;
    ScenarioConfig cfg = testing::random_config(rng, n);
    if (k % 3 == 0) cfg.weights.redundancy_convention = RedundancyConvention::kPaperLiteral;
    testing::budget_for(cfg, initial_selection(cfg), testing::uniform(rng, 1.0, 12.0));
    CAPTURE(k);
    const OaResult r = oa_solve(cfg);
    ++solved;
    check_trace(r.trace);
    CHECK(r.outcome.feasible);
    const double best = enumerate_optimum(cfg);
    CHECK(r.outcome.objective >= best - 1e-7);
    CHECK(r.outcome.objective <= best + cfg.epsilon);
    CHECK(r.outcome.utility >= greedy_solve(cfg).utility - 1e-9);
  }
  CHECK(solved == 60);
}

TEST_CASE("trace CSV") {
  OaTrace trace;
  trace.records.push_back({1, -1.0 / 3.0, -0.5, 1.0 / 6.0, TierSelection{{1, 2, 3}}, 0.0});
  std::ostringstream os;
  write_trace_csv(os, trace);
  CHECK(os.str() == "iter,z_ub,z_lb,gap,selection\n1,-0.333333333,-0.5,0.166666667,1/2/3\n");
}
