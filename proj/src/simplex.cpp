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

#include "mar/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace mar::lp {

std::size_t LinearProgram::add_variable(double c, double lo, double hi) {
  cost.push_back(c);
  lower.push_back(lo);
  upper.push_back(hi);
  for (auto& row : rows) row.coef.push_back(0.0);
  return cost.size() - 1;
}

std::size_t LinearProgram::add_row(std::vector<double> coef, RowSense sense, double rhs) {
  coef.resize(num_vars(), 0.0);
  rows.push_back({std::move(coef), sense, rhs});
  return rows.size() - 1;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration limit";
  }
  return "?";
}

namespace {

using Matrix = std::vector<std::vector<double>>;

// Solves M v = rhs in place by Gaussian elimination with partial pivoting.
// Returns false for a numerically singular M.
bool dense_solve(Matrix m, std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-14) return false;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    double acc = rhs[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= m[r][c] * rhs[c];
    rhs[r] = acc / m[r][r];
  }
  return true;
}

class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options) : opt_(options) {
    m_ = lp.rows.size();
    nv_ = lp.num_vars();
    for (std::size_t j = 0; j < nv_; ++j) {
      if (!std::isfinite(lp.lower[j])) {
        throw std::invalid_argument("simplex: every variable needs a finite lower bound");
      }
      if (lp.upper[j] < lp.lower[j]) {
        infeasible_bounds_ = true;
      }
    }
    // Column layout: structural | one slack per inequality | one artificial per row.
    std::size_t slacks = 0;
    for (const auto& row : lp.rows) slacks += row.sense != RowSense::kEqual;
    n_ = nv_ + slacks + m_;
    a_.assign(m_, std::vector<double>(n_, 0.0));
    b_.resize(m_);
    lower_.assign(n_, 0.0);
    upper_.assign(n_, kInf);
    cost_.assign(n_, 0.0);
    for (std::size_t j = 0; j < nv_; ++j) {
      lower_[j] = lp.lower[j];
      upper_[j] = lp.upper[j];
      cost_[j] = lp.cost[j];
    }
    std::size_t next = nv_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      std::copy(row.coef.begin(), row.coef.end(), a_[i].begin());
      b_[i] = row.rhs;
      if (row.sense == RowSense::kLessEqual) a_[i][next++] = 1.0;
      if (row.sense == RowSense::kGreaterEqual) a_[i][next++] = -1.0;
    }
    art_begin_ = nv_ + slacks;

    x_.assign(n_, 0.0);
    at_upper_.assign(n_, false);
    for (std::size_t j = 0; j < art_begin_; ++j) x_[j] = lower_[j];
    basis_.resize(m_);
    t_ = a_;
    for (std::size_t i = 0; i < m_; ++i) {
      double resid = b_[i];
      for (std::size_t j = 0; j < art_begin_; ++j) resid -= a_[i][j] * x_[j];
      const double sign = resid >= 0.0 ? 1.0 : -1.0;
      a_[i][art_begin_ + i] = sign;
      t_[i][art_begin_ + i] = sign;
      // Scale the row so the artificial column is +1 in the tableau.
      for (double& v : t_[i]) v *= sign;
      basis_[i] = art_begin_ + i;
      x_[art_begin_ + i] = std::abs(resid);
    }
    in_basis_.assign(n_, false);
    for (std::size_t j : basis_) in_basis_[j] = true;
  }

  LpResult run() {
    LpResult result;
    if (infeasible_bounds_) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    std::vector<double> phase1(n_, 0.0);
    for (std::size_t j = art_begin_; j < n_; ++j) phase1[j] = 1.0;
    LpStatus status = iterate(phase1, result.iterations);
    if (status == LpStatus::kIterationLimit) {
      result.status = status;
      return result;
    }
    double infeasibility = 0.0, scale = 1.0;
    for (std::size_t j = art_begin_; j < n_; ++j) infeasibility += x_[j];
    for (double v : b_) scale = std::max(scale, std::abs(v));
    if (infeasibility > opt_.feasibility_tol * scale) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    for (std::size_t j = art_begin_; j < n_; ++j) {
      upper_[j] = 0.0;
      if (!in_basis_[j]) x_[j] = 0.0;
    }
    result.status = iterate(cost_, result.iterations);
    if (result.status != LpStatus::kOptimal) return result;
    if (!refactorize(result)) result.status = LpStatus::kIterationLimit;
    return result;
  }

 private:
  LpStatus iterate(const std::vector<double>& cost, int& iterations) {
    while (true) {
      if (iterations >= opt_.max_iterations) return LpStatus::kIterationLimit;
      // Bland: the lowest-index improving column enters.
      std::size_t enter = n_;
      double dir = 0.0;
      for (std::size_t j = 0; j < n_ && enter == n_; ++j) {
        if (in_basis_[j] || upper_[j] - lower_[j] <= 0.0) continue;
        double d = cost[j];
        for (std::size_t i = 0; i < m_; ++i) d -= cost[basis_[i]] * t_[i][j];
        if (!at_upper_[j] && d < -opt_.optimality_tol) {
          enter = j;
          dir = 1.0;
        } else if (at_upper_[j] && d > opt_.optimality_tol) {
          enter = j;
          dir = -1.0;
        }
      }
      if (enter == n_) return LpStatus::kOptimal;
      ++iterations;

      double theta = upper_[enter] - lower_[enter];
      std::size_t leave_row = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        const double delta = dir * t_[i][enter];
        const std::size_t bj = basis_[i];
        double limit;
        if (delta > opt_.pivot_tol) {
          limit = (x_[bj] - lower_[bj]) / delta;
        } else if (delta < -opt_.pivot_tol && std::isfinite(upper_[bj])) {
          limit = (upper_[bj] - x_[bj]) / -delta;
        } else {
          continue;
        }
        limit = std::max(limit, 0.0);
        if (limit < theta || (limit == theta && leave_row != m_ && bj < basis_[leave_row])) {
          theta = limit;
          leave_row = i;
        }
      }
      if (!std::isfinite(theta)) return LpStatus::kUnbounded;

      for (std::size_t i = 0; i < m_; ++i) x_[basis_[i]] -= theta * dir * t_[i][enter];
      x_[enter] += theta * dir;
      if (leave_row == m_) {
        at_upper_[enter] = !at_upper_[enter];
        x_[enter] = at_upper_[enter] ? upper_[enter] : lower_[enter];
        continue;
      }
      const std::size_t leave = basis_[leave_row];
      const bool to_lower = dir * t_[leave_row][enter] > 0.0;
      x_[leave] = to_lower ? lower_[leave] : upper_[leave];
      at_upper_[leave] = !to_lower;
      pivot(leave_row, enter);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = t_[row][col];
    for (double& v : t_[row]) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] -= f * t_[row][j];
    }
    in_basis_[basis_[row]] = false;
    in_basis_[col] = true;
    basis_[row] = col;
  }

  // Recomputes basic values and duals from the original matrix so that
  // accumulated tableau round-off does not reach the caller.
  bool refactorize(LpResult& result) {
    Matrix bm(m_, std::vector<double>(m_));
    Matrix bt(m_, std::vector<double>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t k = 0; k < m_; ++k) {
        bm[i][k] = a_[i][basis_[k]];
        bt[k][i] = a_[i][basis_[k]];
      }
    }
    std::vector<double> rhs = b_;
    for (std::size_t j = 0; j < n_; ++j) {
      if (in_basis_[j]) continue;
      for (std::size_t i = 0; i < m_; ++i) rhs[i] -= a_[i][j] * x_[j];
    }
    std::vector<double> y(m_);
    for (std::size_t k = 0; k < m_; ++k) y[k] = cost_[basis_[k]];
    if (m_ > 0 && (!dense_solve(bm, rhs) || !dense_solve(bt, y))) return false;
    for (std::size_t k = 0; k < m_; ++k) x_[basis_[k]] = rhs[k];

    result.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(nv_));
    result.duals = y;
    result.reduced_costs.resize(nv_);
    result.objective = 0.0;
    for (std::size_t j = 0; j < nv_; ++j) {
      double d = cost_[j];
      for (std::size_t i = 0; i < m_; ++i) d -= a_[i][j] * y[i];
      result.reduced_costs[j] = in_basis_[j] ? 0.0 : d;
      result.objective += cost_[j] * result.x[j];
    }
    return true;
  }

  SimplexOptions opt_;
  std::size_t m_ = 0, nv_ = 0, n_ = 0, art_begin_ = 0;
  bool infeasible_bounds_ = false;
  Matrix a_, t_;
  std::vector<double> b_, lower_, upper_, cost_, x_;
  std::vector<bool> at_upper_, in_basis_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve(const LinearProgram& lp, const SimplexOptions& options) {
  return Tableau(lp, options).run();
}

}  // namespace mar::lp
