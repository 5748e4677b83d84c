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

#include "mar/nlp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mar/errors.hpp"

namespace mar {

namespace {

// The fixed-selection problem in normalized units: x_n = p_n / P,
// rho_n(x) = log2(1 + k_n x) with k_n = P g_n / sigma^2, c_n = C_n / B.
struct NormalizedProblem {
  std::size_t n = 0;
  std::vector<double> k;
  std::vector<double> c;
  double lambda = 0.0;     // objective weight on sum x
  double mu_scaled = 0.0;  // s mu eta_r B, signed by convention
  double budget_w = 0.0;
  double bandwidth_hz = 0.0;

  double rho(std::size_t i, double x) const { return std::log1p(k[i] * x) / std::numbers::ln2; }
  double rho1(std::size_t i, double x) const {
    return k[i] / (std::numbers::ln2 * (1.0 + k[i] * x));
  }
  double rho2(std::size_t i, double x) const {
    const double den = 1.0 + k[i] * x;
    return -k[i] * k[i] / (std::numbers::ln2 * den * den);
  }
};

NormalizedProblem normalize(const TierSelection& sel, const ScenarioConfig& cfg) {
  NormalizedProblem np;
  np.n = cfg.num_users();
  np.budget_w = cfg.weights.total_power_w;
  np.bandwidth_hz = cfg.link.bandwidth_hz;
  np.k.resize(np.n);
  np.c.resize(np.n);
  for (std::size_t i = 0; i < np.n; ++i) {
    np.k[i] = np.budget_w * user_gain(i, cfg.link) / cfg.link.noise_power_w;
    np.c[i] = cfg.tiers.rate_of(sel[i]) / np.bandwidth_hz;
  }
  const auto& w = cfg.weights;
  np.lambda = w.lambda;
  np.mu_scaled = w.redundancy_sign() * w.mu * cfg.link.bandwidth_hz / cfg.tiers.rate_of(2);
  return np;
}

// Primal-dual state in normalized units.
struct State {
  std::vector<double> x, s, z;
  double s0 = 0.0, z0 = 0.0;
};

struct Residual {
  std::vector<double> stat, prim, comp;
  double prim0 = 0.0, comp0 = 0.0;

  double inf_norm() const {
    double m = std::max(std::abs(prim0), std::abs(comp0));
    for (const auto* v : {&stat, &prim, &comp}) {
      for (double e : *v) m = std::max(m, std::abs(e));
    }
    return m;
  }
  double two_norm() const {
    double acc = prim0 * prim0 + comp0 * comp0;
    for (const auto* v : {&stat, &prim, &comp}) {
      for (double e : *v) acc += e * e;
    }
    return std::sqrt(acc);
  }
};

Residual residual(const NormalizedProblem& np, const State& st, double tau) {
  Residual r;
  r.stat.resize(np.n);
  r.prim.resize(np.n);
  r.comp.resize(np.n);
  double sum_x = 0.0;
  for (std::size_t i = 0; i < np.n; ++i) {
    const double x = st.x[i];
    sum_x += x;
    r.stat[i] = np.lambda - (np.mu_scaled + st.z[i]) * np.rho1(i, x) + st.z0;
    r.prim[i] = np.rho(i, x) - np.c[i] - st.s[i];
    r.comp[i] = st.s[i] * st.z[i] - tau;
  }
  r.prim0 = 1.0 - sum_x - st.s0;
  r.comp0 = st.s0 * st.z0 - tau;
  return r;
}

State to_state(const NlpIterate& it, const NormalizedProblem& np) {
  State st;
  st.x.resize(np.n);
  st.s.resize(np.n);
  for (std::size_t i = 0; i < np.n; ++i) {
    st.x[i] = it.p[i] / np.budget_w;
    st.s[i] = it.slack_bps[i] / np.bandwidth_hz;
  }
  st.z = it.dual;
  st.s0 = it.budget_slack_w / np.budget_w;
  st.z0 = it.budget_dual;
  return st;
}

NlpIterate to_iterate(const State& st, const NormalizedProblem& np, double tau) {
  NlpIterate it;
  it.p.watts.resize(np.n);
  it.slack_bps.resize(np.n);
  for (std::size_t i = 0; i < np.n; ++i) {
    it.p.watts[i] = st.x[i] * np.budget_w;
    it.slack_bps[i] = st.s[i] * np.bandwidth_hz;
  }
  it.dual = st.z;
  it.budget_slack_w = st.s0 * np.budget_w;
  it.budget_dual = st.z0;
  it.tau = tau;
  return it;
}

struct Step {
  std::vector<double> dx, ds, dz;
  double ds0 = 0.0, dz0 = 0.0;
};

// Newton direction for the perturbed KKT system. Per-user blocks are
// eliminated so only the scalar budget dual remains coupled.
Step newton_direction(const NormalizedProblem& np, const State& st, const Residual& r) {
  Step d;
  d.dx.resize(np.n);
  d.ds.resize(np.n);
  d.dz.resize(np.n);
  std::vector<double> diag(np.n), rhs(np.n);
  double sum_q = 0.0, sum_w = 0.0;
  for (std::size_t i = 0; i < np.n; ++i) {
    const double x = st.x[i];
    const double g1 = np.rho1(i, x);
    const double hess = -(np.mu_scaled + st.z[i]) * np.rho2(i, x);
    double dd = hess + g1 * g1 * st.z[i] / st.s[i];
    // Nonconvex objective (literal redundancy sign) can make the block indefinite.
    const double floor = 1e-8 * (1.0 + g1 * g1 * st.z[i] / st.s[i]);
    if (dd < floor) dd = floor;
    diag[i] = dd;
    rhs[i] = -r.stat[i] - g1 * (r.comp[i] + st.z[i] * r.prim[i]) / st.s[i];
    sum_q += rhs[i] / dd;
    sum_w += 1.0 / dd;
  }
  d.dz0 = (-r.comp0 - st.z0 * r.prim0 + st.z0 * sum_q) / (st.s0 + st.z0 * sum_w);
  double sum_dx = 0.0;
  for (std::size_t i = 0; i < np.n; ++i) {
    d.dx[i] = (rhs[i] - d.dz0) / diag[i];
    sum_dx += d.dx[i];
    d.ds[i] = np.rho1(i, st.x[i]) * d.dx[i] + r.prim[i];
    d.dz[i] = (-r.comp[i] - st.z[i] * d.ds[i]) / st.s[i];
  }
  d.ds0 = r.prim0 - sum_dx;
  return d;
}

double max_step(const State& st, const Step& d, double fraction) {
  double alpha = 1.0;
  auto limit = [&](double v, double dv) {
    if (dv < 0.0) alpha = std::min(alpha, -fraction * v / dv);
  };
  for (std::size_t i = 0; i < st.x.size(); ++i) {
    limit(st.s[i], d.ds[i]);
    limit(st.z[i], d.dz[i]);
  }
  limit(st.s0, d.ds0);
  limit(st.z0, d.dz0);
  return alpha;
}

State advance(const State& st, const Step& d, double alpha) {
  State next = st;
  for (std::size_t i = 0; i < st.x.size(); ++i) {
    next.x[i] += alpha * d.dx[i];
    next.s[i] += alpha * d.ds[i];
    next.z[i] += alpha * d.dz[i];
  }
  next.s0 += alpha * d.ds0;
  next.z0 += alpha * d.dz0;
  return next;
}

bool in_domain(const NormalizedProblem& np, const State& st) {
  for (std::size_t i = 0; i < np.n; ++i) {
    if (!(1.0 + np.k[i] * st.x[i] > 0.0) || !(st.s[i] > 0.0) || !(st.z[i] > 0.0)) return false;
  }
  return st.s0 > 0.0 && st.z0 > 0.0;
}

double physical_objective(const TierSelection& sel, const PowerVector& p,
                          const ScenarioConfig& cfg) {
  return objective(sel, p, cfg);
}

double sum_min_power(const PowerVector& pmin) { return pmin.total(); }

void require_budget(const PowerVector& pmin, const ScenarioConfig& cfg) {
  const double budget = cfg.weights.total_power_w;
  const double need = sum_min_power(pmin);
  if (!(budget > 0.0) || need > budget * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "selection infeasible: minimum powers need " << need << " W but the total power budget is "
       << budget << " W";
    throw InfeasibleError(os.str());
  }
}

// Moves an almost-converged point onto the feasible set: every rate at least
// its requirement and the budget respected.
void project_feasible(PowerVector& p, const PowerVector& pmin, double budget) {
  for (std::size_t i = 0; i < p.size(); ++i) p.watts[i] = std::max(p.watts[i], pmin[i]);
  const double total = p.total();
  if (total <= budget) return;
  const double excess = total - budget;
  double headroom = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) headroom += p[i] - pmin[i];
  if (headroom <= 0.0) return;
  const double keep = std::max(0.0, 1.0 - excess / headroom);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p.watts[i] = pmin[i] + (p[i] - pmin[i]) * keep;
  }
}

}  // namespace

double subproblem_constant(const TierSelection& sel, const ScenarioConfig& cfg) {
  const auto& w = cfg.weights;
  double qos_sum = 0.0;
  for (std::size_t n = 0; n < cfg.num_users(); ++n) qos_sum += qos(sel[n], cfg.tiers, w);
  return (1.0 - w.lambda - w.mu) * normalizers(cfg).eta_q * qos_sum;
}

double barrier_value(const NlpIterate& it, const TierSelection& sel, const ScenarioConfig& cfg) {
  const double obj = physical_objective(sel, it.p, cfg);
  if (it.tau == 0.0) return obj;
  const double budget_slack = cfg.weights.total_power_w - it.p.total();
  double logs = 0.0;
  for (double s : it.slack_bps) {
    if (!(s > 0.0)) throw std::domain_error("barrier_value: slack on the boundary");
    logs += std::log(s);
  }
  if (!(budget_slack > 0.0)) throw std::domain_error("barrier_value: budget on the boundary");
  return obj - it.tau * (logs + std::log(budget_slack));
}

double kkt_residual(const NlpIterate& it, const TierSelection& sel, const ScenarioConfig& cfg) {
  const auto np = normalize(sel, cfg);
  return residual(np, to_state(it, np), it.tau).inf_norm();
}

NlpResult solve_fixed_selection(const TierSelection& sel, const ScenarioConfig& cfg,
                                const NlpOptions& options) {
  if (!sel.is_well_formed(cfg.num_users())) {
    throw ConfigError("selection must assign one tier in 1..3 to each user");
  }
  const PowerVector pmin = min_powers(sel, cfg);
  require_budget(pmin, cfg);
  const auto np = normalize(sel, cfg);
  const double budget = cfg.weights.total_power_w;

  NlpResult result;
  const double spare = 1.0 - sum_min_power(pmin) / budget;
  if (spare <= 1e-12) {
    // The budget admits exactly one point.
    result.p_opt = pmin;
    project_feasible(result.p_opt, pmin, budget);
    result.objective = physical_objective(sel, result.p_opt, cfg);
    result.final_iterate.p = result.p_opt;
    return result;
  }

  State st;
  st.x.resize(np.n);
  st.s.resize(np.n);
  st.z.resize(np.n);
  double tau = options.tau_initial;
  double sum_x = 0.0;
  for (std::size_t i = 0; i < np.n; ++i) {
    st.x[i] = pmin[i] / budget + 0.1 * spare / static_cast<double>(np.n);
    sum_x += st.x[i];
    st.s[i] = np.rho(i, st.x[i]) - np.c[i];
    st.z[i] = tau / st.s[i];
  }
  st.s0 = 1.0 - sum_x;
  st.z0 = tau / st.s0;

  int steps = 0;
  while (true) {
    const double center_tol = std::max(options.centering * tau, 1e-13);
    Residual r = residual(np, st, tau);
    while (r.inf_norm() > center_tol) {
      if (steps >= options.max_newton_steps) {
        std::ostringstream os;
        os << "interior point did not converge in " << steps << " Newton steps (tau " << tau
           << ", residual " << r.inf_norm() << ")";
        throw SolverError(os.str());
      }
      ++steps;
      const Step d = newton_direction(np, st, r);
      double alpha = max_step(st, d, options.fraction_to_boundary);
      const double merit = r.two_norm();
      State trial;
      Residual trial_r;
      bool accepted = false;
      for (int k = 0; k <= options.max_backtracks; ++k, alpha *= 0.5) {
        trial = advance(st, d, alpha);
        if (!in_domain(np, trial)) continue;
        trial_r = residual(np, trial, tau);
        if (trial_r.two_norm() <= (1.0 - options.armijo * alpha) * merit) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        if (!in_domain(np, trial)) {
          throw SolverError("interior point line search left the domain");
        }
        trial_r = residual(np, trial, tau);
      }
      st = std::move(trial);
      r = std::move(trial_r);
    }
    PowerVector p{std::vector<double>(np.n)};
    for (std::size_t i = 0; i < np.n; ++i) p.watts[i] = st.x[i] * budget;
    result.central_path.push_back({tau, physical_objective(sel, p, cfg)});
    if (tau <= options.tau_final * (1.0 + 1e-9)) break;
    tau = std::max(tau * options.tau_factor, options.tau_final);
  }

  result.final_iterate = to_iterate(st, np, tau);
  result.iterations = steps;
  result.tau_final = tau;
  for (std::size_t i = 0; i < np.n; ++i) {
    result.max_complementarity = std::max(result.max_complementarity, std::abs(st.s[i] * st.z[i]));
  }
  result.max_complementarity = std::max(result.max_complementarity, std::abs(st.s0 * st.z0));
  result.kkt_residual = residual(np, st, 0.0).inf_norm();
  result.p_opt = result.final_iterate.p;
  project_feasible(result.p_opt, pmin, budget);
  result.objective = physical_objective(sel, result.p_opt, cfg);
  return result;
}

PowerVector analytic_power_oracle(const TierSelection& sel, const ScenarioConfig& cfg) {
  if (!sel.is_well_formed(cfg.num_users())) {
    throw ConfigError("selection must assign one tier in 1..3 to each user");
  }
  const PowerVector pmin = min_powers(sel, cfg);
  require_budget(pmin, cfg);
  const auto& w = cfg.weights;
  if (w.redundancy_convention == RedundancyConvention::kPaperLiteral || w.mu == 0.0) {
    return pmin;
  }
  const auto eta = normalizers(cfg);
  const double budget = w.total_power_w;
  const double numerator = w.mu * eta.eta_r * cfg.link.bandwidth_hz / std::numbers::ln2;
  const auto gains = user_gains(cfg.link);

  // Stationarity of each user given the budget multiplier nu.
  auto powers_at = [&](double nu) {
    PowerVector p{std::vector<double>(pmin.size())};
    const double price = w.lambda * eta.eta_p + nu;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double unconstrained = price > 0.0
                                       ? numerator / price - cfg.link.noise_power_w / gains[i]
                                       : std::numeric_limits<double>::infinity();
      p.watts[i] = std::max(pmin[i], unconstrained);
    }
    return p;
  };

  PowerVector free = powers_at(0.0);
  if (free.total() <= budget) return free;
  double lo = 0.0, hi = 1.0;
  while (powers_at(hi).total() > budget) hi *= 2.0;
  for (int iter = 0; iter < 400 && hi - lo > 1e-16 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (powers_at(mid).total() > budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return powers_at(hi);
}

}  // namespace mar
