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
#include "mar/simplex.hpp"
#include "test_support.hpp"

using namespace mar::lp;
using doctest::Approx;
using mar::testing::uniform;

namespace {

// Independent optimality certificate: primal feasibility, dual sign
// conditions, reduced-cost signs at the bounds and a zero duality gap.
void certify(const LinearProgram& lp, const LpResult& r, double tol = 1e-9) {
  REQUIRE(r.status == LpStatus::kOptimal);
  const std::size_t n = lp.num_vars();
  REQUIRE(r.x.size() == n);
  REQUIRE(r.duals.size() == lp.rows.size());
  double scale = 1.0;
  for (const auto& row : lp.rows) scale = std::max(scale, std::abs(row.rhs));

  for (std::size_t j = 0; j < n; ++j) {
    CHECK(r.x[j] >= lp.lower[j] - tol * scale);
    CHECK(r.x[j] <= lp.upper[j] + tol * scale);
  }
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const Row& row = lp.rows[i];
    double act = 0.0;
    for (std::size_t j = 0; j < n; ++j) act += row.coef[j] * r.x[j];
    const double y = r.duals[i];
    if (row.sense == RowSense::kLessEqual) {
      CHECK(act <= row.rhs + tol * scale);
      CHECK(y <= tol);
      if (row.rhs - act > 1e-7 * scale) CHECK(std::abs(y) <= tol);
    } else if (row.sense == RowSense::kGreaterEqual) {
      CHECK(act >= row.rhs - tol * scale);
      CHECK(y >= -tol);
      if (act - row.rhs > 1e-7 * scale) CHECK(std::abs(y) <= tol);
    } else {
      CHECK(std::abs(act - row.rhs) <= tol * scale);
    }
    dual_obj += y * row.rhs;
  }
  double primal_obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double d = lp.cost[j];
    for (std::size_t i = 0; i < lp.rows.size(); ++i) d -= lp.rows[i].coef[j] * r.duals[i];
    CHECK((std::abs(d - r.reduced_costs[j]) <= 1e-8 || r.reduced_costs[j] == 0.0));
    const bool at_lo = r.x[j] - lp.lower[j] <= 1e-7 * scale;
    const bool at_hi = lp.upper[j] - r.x[j] <= 1e-7 * scale;
    if (!at_lo && !at_hi) CHECK(std::abs(d) <= tol);
    if (at_lo && !at_hi) CHECK(d >= -tol);
    if (at_hi && !at_lo) CHECK(d <= tol);
    dual_obj += d * r.x[j];
    primal_obj += lp.cost[j] * r.x[j];
  }
  CHECK(r.objective == Approx(primal_obj).epsilon(1e-12));
  CHECK(std::abs(primal_obj - dual_obj) <= 1e-8 * (1.0 + std::abs(primal_obj)));
}

}  // namespace

TEST_CASE("textbook maximization") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36.
  LinearProgram lp;
  lp.add_variable(-3, 0, kInf);
  lp.add_variable(-5, 0, kInf);
  lp.add_row({1, 0}, RowSense::kLessEqual, 4);
  lp.add_row({0, 2}, RowSense::kLessEqual, 12);
  lp.add_row({3, 2}, RowSense::kLessEqual, 18);
  const LpResult r = solve(lp);
  certify(lp, r);
  CHECK(r.x[0] == Approx(2));
  CHECK(r.x[1] == Approx(6));
  CHECK(r.objective == Approx(-36));
  CHECK(r.duals[0] == Approx(0).scale(1));
  CHECK(r.duals[1] == Approx(-1.5));
  CHECK(r.duals[2] == Approx(-1));
}

TEST_CASE("equality, >= rows and shifted bounds") {
  LinearProgram lp;
  lp.add_variable(1, -5, 5);
  lp.add_variable(2, -1, kInf);
  lp.add_variable(-1, 0, 3);
  lp.add_row({1, 1, 1}, RowSense::kEqual, 2);
  lp.add_row({1, -1, 0}, RowSense::kGreaterEqual, -4);
  const LpResult r = solve(lp);
  certify(lp, r);
  CHECK(r.x[2] == Approx(3));
  CHECK(r.x[1] == Approx(-1));
  CHECK(r.x[0] == Approx(0).scale(1));
  CHECK(r.objective == Approx(-5));
}

TEST_CASE("bound flips without pivots") {
  LinearProgram lp;
  lp.add_variable(-1, 0, 2);
  lp.add_variable(-1, 1, 3);
  const LpResult r = solve(lp);
  certify(lp, r);
  CHECK(r.objective == Approx(-5));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram inf;
  inf.add_variable(1, 0, kInf);
  inf.add_variable(1, 0, kInf);
  inf.add_row({1, 1}, RowSense::kLessEqual, 1);
  inf.add_row({1, 1}, RowSense::kGreaterEqual, 2);
  CHECK(solve(inf).status == LpStatus::kInfeasible);

  LinearProgram bad_bounds;
  bad_bounds.add_variable(1, 2, 1);
  CHECK(solve(bad_bounds).status == LpStatus::kInfeasible);

  LinearProgram unb;
  unb.add_variable(-1, 0, kInf);
  unb.add_variable(0, 0, kInf);
  unb.add_row({1, -1}, RowSense::kLessEqual, 1);
  CHECK(solve(unb).status == LpStatus::kUnbounded);

  LinearProgram no_lower;
  no_lower.add_variable(1, -kInf, 0);
  CHECK_THROWS_AS(solve(no_lower), std::invalid_argument);

  CHECK(std::string(to_string(LpStatus::kUnbounded)) == "unbounded");
}

TEST_CASE("Beale's cycling example terminates") {
  LinearProgram lp;
  lp.add_variable(-0.75, 0, kInf);
  lp.add_variable(20, 0, kInf);
  lp.add_variable(-0.5, 0, kInf);
  lp.add_variable(6, 0, kInf);
  lp.add_row({0.25, -8, -1, 9}, RowSense::kLessEqual, 0);
  lp.add_row({0.5, -12, -0.5, 3}, RowSense::kLessEqual, 0);
  lp.add_row({0, 0, 1, 0}, RowSense::kLessEqual, 1);
  const LpResult r = solve(lp);
  certify(lp, r);
  CHECK(r.objective == Approx(-1.25));
}

TEST_CASE("iteration limit is reported") {
  LinearProgram lp;
  lp.add_variable(-1, 0, kInf);
  lp.add_variable(-1, 0, kInf);
  lp.add_row({1, 2}, RowSense::kLessEqual, 4);
  lp.add_row({3, 1}, RowSense::kLessEqual, 6);
  SimplexOptions opt;
  opt.max_iterations = 1;
  CHECK(solve(lp, opt).status == LpStatus::kIterationLimit);
}

TEST_CASE("random feasible programs satisfy the optimality certificate") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + k % 7;
    const std::size_t m = k % 6;
    LinearProgram lp;
    std::vector<double> x0(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double lo = uniform(rng, -3, 1);
      const double hi = lo + uniform(rng, 0.0, 5.0);
      lp.add_variable(uniform(rng, -2, 2), lo, hi);
      x0[j] = uniform(rng, lo, hi);
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> a(n);
      double act = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        a[j] = (k + i + j) % 4 == 0 ? 0.0 : uniform(rng, -3, 3);
        act += a[j] * x0[j];
      }
      const int kind = static_cast<int>((k + i) % 3);
      if (kind == 0) lp.add_row(a, RowSense::kLessEqual, act + uniform(rng, 0, 2));
      if (kind == 1) lp.add_row(a, RowSense::kGreaterEqual, act - uniform(rng, 0, 2));
      if (kind == 2) lp.add_row(a, RowSense::kEqual, act);
    }
    const LpResult r = solve(lp);
    certify(lp, r);
  }
}

TEST_CASE("degenerate programs with repeated rows") {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 100; ++k) {
    LinearProgram lp;
    const std::size_t n = 3 + k % 4;
    for (std::size_t j = 0; j < n; ++j) lp.add_variable(uniform(rng, -1, 1), 0, 1);
    std::vector<double> ones(n, 1.0);
    lp.add_row(ones, RowSense::kEqual, 1);
    lp.add_row(ones, RowSense::kLessEqual, 1);
    std::vector<double> half(n, 0.0);
    half[0] = 1;
    half[1] = -1;
    lp.add_row(half, RowSense::kLessEqual, 0);
    lp.add_row(half, RowSense::kLessEqual, 0);
    certify(lp, solve(lp));
  }
}
