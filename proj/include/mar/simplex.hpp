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

#include <limits>
#include <string>
#include <vector>

namespace mar::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct Row {
  std::vector<double> coef;  // dense, one entry per structural variable
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
};

/// minimize cost . x  subject to rows, lower <= x <= upper.
/// Every variable needs a finite lower bound.
struct LinearProgram {
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;

  std::size_t num_vars() const { return cost.size(); }
  /// Appends a variable and returns its index.
  std::size_t add_variable(double c, double lo, double hi);
  /// Appends a row and returns its index.
  std::size_t add_row(std::vector<double> coef, RowSense sense, double rhs);
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;             // structural variables
  std::vector<double> duals;         // one per row
  std::vector<double> reduced_costs; // structural variables
  double objective = 0.0;
  int iterations = 0;
};

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-10;
  double pivot_tol = 1e-11;
  int max_iterations = 20000;
};

/// Two-phase bounded-variable primal simplex on a dense tableau with
/// Bland's rule. The final basis is refactorized from the original data
/// before x, duals and reduced costs are reported.
LpResult solve(const LinearProgram& lp, const SimplexOptions& options = {});

const char* to_string(LpStatus status);

}  // namespace mar::lp
