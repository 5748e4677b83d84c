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
#include <random>

#include "doctest.h"
#include "mar/errors.hpp"
#include "mar/model.hpp"
#include "test_support.hpp"

using namespace mar;
using doctest::Approx;

namespace {

ScenarioConfig single_user(double distance_m) {
  ScenarioConfig cfg = table1_defaults();
  cfg.link.reference_distances_m = {distance_m};
  cfg.link.distance_factor = 1.0;
  return cfg;
}

PowerVector rate_power(const ScenarioConfig& cfg, std::size_t user, double bps) {
  PowerVector p{std::vector<double>(cfg.num_users(), 0.0)};
  p.watts[user] = min_power(bps, user_gain(user, cfg.link), cfg.link);
  return p;
}

}  // namespace

TEST_CASE("tier table") {
  TierTable t;
  CHECK(t.rate_of(1) == 0.77e6);
  CHECK(t.rate_of(3) == 3.84e6);
  CHECK_THROWS(t.rate_of(4));
  CHECK(std::string(TierTable::label(1)) == "360P");
  CHECK(std::string(TierTable::label(3)) == "1080P");
}

TEST_CASE("selection formatting and shape") {
  TierSelection sel{{1, 1, 2, 3, 3}};
  CHECK(sel.to_string() == "1/1/2/3/3");
  CHECK(sel.is_well_formed(5));
  CHECK_FALSE(sel.is_well_formed(4));
  CHECK_FALSE(TierSelection{{1, 0}}.is_well_formed(2));
  CHECK_FALSE(TierSelection{{4}}.is_well_formed(1));
}

TEST_CASE("QoS and normalizers at the defaults") {
  const ScenarioConfig cfg = table1_defaults();
  CHECK(std::abs(qos(3, cfg.tiers, cfg.weights) - 24.87) <= 0.01);
  CHECK(std::abs(qos(2, cfg.tiers, cfg.weights) - 6.218) <= 0.01);
  CHECK(qos(1, cfg.tiers, cfg.weights) == Approx(1.0));
  CHECK(best_qos(cfg.tiers, cfg.weights) == Approx(24.87).epsilon(1e-3));

  const Normalizers eta = normalizers(cfg);
  CHECK(eta.eta_q == Approx(8.042e-3).epsilon(1e-3));
  CHECK(eta.eta_r == Approx(5.208e-7).epsilon(1e-3));
  CHECK(eta.eta_p == Approx(0.02));
}

TEST_CASE("redundancy sign conventions") {
  ScenarioConfig cfg = table1_defaults();
  TierSelection sel{{1, 2, 3, 1, 2}};
  PowerVector p = min_powers(sel, cfg);
  for (std::size_t n = 0; n < 5; ++n) CHECK(std::abs(redundancy(n, sel, p, cfg)) < 1e-3);

  p.watts[1] = min_power(1.92e6 + 1e6, user_gain(1, cfg.link), cfg.link);
  CHECK(redundancy(1, sel, p, cfg) == Approx(1e6));
  cfg.weights.redundancy_convention = RedundancyConvention::kPaperLiteral;
  CHECK(redundancy(1, sel, p, cfg) == Approx(-1e6));

  cfg.weights.redundancy_convention = RedundancyConvention::kReward;
  p.watts[0] = 0.0;
  CHECK(redundancy(0, sel, p, cfg) == Approx(-0.77e6));
}

TEST_CASE("utility single-term cases") {
  ScenarioConfig cfg = single_user(10.0);
  cfg.weights.lambda = 0.0;
  cfg.weights.mu = 0.0;
  for (double w : {0.0, 1.0, 17.0}) CHECK(utility({{3}}, {{w}}, cfg) == Approx(1.0));

  cfg.weights.lambda = 1.0;
  CHECK(utility({{2}}, {{cfg.weights.total_power_w}}, cfg) == Approx(-1.0));

  cfg.weights.lambda = 0.0;
  cfg.weights.mu = 1.0;
  for (int tier = 1; tier <= 3; ++tier) {
    const PowerVector p = rate_power(cfg, 0, cfg.tiers.rate_of(tier));
    CHECK(std::abs(utility({{tier}}, p, cfg)) < 1e-9);
  }
  CHECK(objective({{2}}, {{3.0}}, cfg) == -utility({{2}}, {{3.0}}, cfg));
}

TEST_CASE("feasibility report") {
  const ScenarioConfig cfg = table1_defaults();
  TierSelection sel{{1, 1, 1, 1, 1}};
  CHECK(check_feasibility(sel, min_powers(sel, cfg), cfg).feasible);

  PowerVector p = min_powers(sel, cfg);
  p.watts[2] = 0.0;
  FeasibilityReport r = check_feasibility(sel, p, cfg);
  CHECK_FALSE(r.feasible);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].find("user 3") != std::string::npos);

  PowerVector over{std::vector<double>(5, cfg.weights.total_power_w / 5 + 1.0)};
  r = check_feasibility(sel, over, cfg);
  CHECK_FALSE(r.feasible);
  CHECK(r.violations.back().find("budget") != std::string::npos);

  CHECK_FALSE(check_feasibility({{1, 1, 1, 1}}, over, cfg).feasible);
  CHECK_FALSE(check_feasibility({{1, 1, 0, 1, 1}}, over, cfg).feasible);
}

TEST_CASE("scenario validation") {
  ScenarioConfig cfg = table1_defaults();
  CHECK_NOTHROW(validate(cfg));
  cfg.weights.lambda = 0.7;
  cfg.weights.mu = 0.4;
  try {
    validate(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("lambda+mu") != std::string::npos);
  }
  cfg = table1_defaults();
  cfg.tiers.required_rates_bps = {1e6, 1e6, 2e6};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = table1_defaults();
  cfg.weights.total_power_w = 0.0;
  CHECK_NOTHROW(validate(cfg));
  cfg.weights.total_power_w = -1.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("utility gradient matches finite differences") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + k % 6;
    ScenarioConfig cfg = testing::random_config(rng, n);
    const TierSelection sel = testing::random_selection(rng, n);
    PowerVector p = min_powers(sel, cfg);
    for (auto& w : p.watts) w += testing::uniform(rng, 0.1, 20.0);
    const Normalizers eta = normalizers(cfg);
    for (std::size_t u = 0; u < n; ++u) {
      const double g = user_gain(u, cfg.link);
      const double analytic =
          cfg.weights.lambda * eta.eta_p - cfg.weights.mu * eta.eta_r * rate_slope(p[u], g, cfg.link);
      const double h = 1e-4 * std::max(1.0, p[u]);
      PowerVector up = p, dn = p;
      up.watts[u] += h;
      dn.watts[u] -= h;
      const double fd = (objective(sel, up, cfg) - objective(sel, dn, cfg)) / (2 * h);
      CHECK(std::abs(fd - analytic) <= 1e-6 * std::abs(analytic) + 1e-12);
    }
  }
}

TEST_CASE("tier swap changes utility affinely") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 1 + k % 5;
    ScenarioConfig cfg = testing::random_config(rng, n);
    if (k % 2) cfg.weights.redundancy_convention = RedundancyConvention::kPaperLiteral;
    TierSelection sel = testing::random_selection(rng, n);
    PowerVector p{std::vector<double>(n)};
    for (auto& w : p.watts) w = testing::uniform(rng, 0.0, 30.0);
    const std::size_t u = k % n;
    const int old_tier = sel[u];
    const int new_tier = 1 + (old_tier + k % 2) % 3;
    TierSelection swapped = sel;
    swapped.tier_of_user[u] = new_tier;
    const Normalizers eta = normalizers(cfg);
    const double s = cfg.weights.redundancy_sign();
    const double expected =
        (1 - cfg.weights.lambda - cfg.weights.mu) * eta.eta_q *
            (qos(new_tier, cfg.tiers, cfg.weights) - qos(old_tier, cfg.tiers, cfg.weights)) +
        cfg.weights.mu * eta.eta_r * s * (cfg.tiers.rate_of(old_tier) - cfg.tiers.rate_of(new_tier));
    const double delta = utility(swapped, p, cfg) - utility(sel, p, cfg);
    CHECK(delta == Approx(expected).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("literal convention penalizes power") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + k % 5;
    ScenarioConfig cfg = testing::random_config(rng, n);
    cfg.weights.redundancy_convention = RedundancyConvention::kPaperLiteral;
    const TierSelection sel = testing::random_selection(rng, n);
    PowerVector p{std::vector<double>(n)};
    for (auto& w : p.watts) w = testing::uniform(rng, 0.0, 30.0);
    PowerVector more = p;
    more.watts[k % n] += testing::uniform(rng, 1e-3, 10.0);
    CHECK(utility(sel, more, cfg) < utility(sel, p, cfg));
  }
}

TEST_CASE("normalized QoS never exceeds one") {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + k % 8;
    const ScenarioConfig cfg = testing::random_config(rng, n);
    const TierSelection sel = testing::random_selection(rng, n);
    double sum = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const double q = qos(sel[u], cfg.tiers, cfg.weights);
      CHECK(q <= best_qos(cfg.tiers, cfg.weights));
      sum += q;
    }
    CHECK(normalizers(cfg).eta_q * sum <= 1.0 + 1e-15);
  }
}
