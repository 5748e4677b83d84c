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

// marsolve: experiment harness over the C interface in mar/mar.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mar/mar.h"
#include "svg_chart.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kConfig = 2, kInfeasible = 3, kSolver = 4 };

struct ScenarioDeleter {
  void operator()(mar_scenario* s) const { mar_scenario_free(s); }
};
struct OutcomeDeleter {
  void operator()(mar_outcome* o) const { mar_outcome_free(o); }
};
using Scenario = std::unique_ptr<mar_scenario, ScenarioDeleter>;
using Outcome = std::unique_ptr<mar_outcome, OutcomeDeleter>;

// Carries a library status out of nested helpers.
struct Failure {
  mar_status status;
  std::string message;
};

void check(mar_status status, const std::string& context = {}) {
  if (status != MAR_OK) {
    throw Failure{status, (context.empty() ? "" : context + ": ") + mar_last_error()};
  }
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string selection_of(const mar_outcome* o) {
  std::string s;
  for (size_t n = 0; n < mar_outcome_num_users(o); ++n) {
    if (n) s += '/';
    s += std::to_string(mar_outcome_tier(o, n));
  }
  return s;
}

template <typename F>
std::string read_text(F&& fill) {
  const size_t len = fill(nullptr, 0);
  std::string text(len + 1, '\0');
  fill(text.data(), text.size());
  text.resize(len);
  return text;
}

struct GlobalOptions {
  std::string config;
  std::string out_dir = ".";
  std::string redundancy;
  long seed = 0;  // reserved; the model is deterministic
};

Scenario load_scenario(const GlobalOptions& g) {
  mar_scenario* raw = nullptr;
  if (g.config.empty()) {
    check(mar_scenario_default(&raw));
  } else {
    check(mar_scenario_load(g.config.c_str(), &raw));
  }
  Scenario s(raw);
  if (g.redundancy == "paper") check(mar_scenario_set_redundancy(s.get(), MAR_REDUNDANCY_PAPER));
  if (g.redundancy == "reward") check(mar_scenario_set_redundancy(s.get(), MAR_REDUNDANCY_REWARD));
  return s;
}

Outcome solve_oa(const mar_scenario* s) {
  mar_outcome* raw = nullptr;
  check(mar_solve_oa(s, &raw), "outer approximation");
  return Outcome(raw);
}

Outcome solve_greedy(const mar_scenario* s) {
  mar_outcome* raw = nullptr;
  check(mar_solve_greedy(s, &raw), "greedy");
  return Outcome(raw);
}

void write_file(const GlobalOptions& g, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(g.out_dir);
  const auto path = std::filesystem::path(g.out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{MAR_ERR_USAGE, "cannot write " + path.string()};
  out << text;
}

void print_header(const mar_scenario* s, const GlobalOptions& g) {
  double eps = 0.0;
  check(mar_scenario_get(s, "epsilon", &eps));
  std::cout << "# config = " << (g.config.empty() ? "<table1 defaults>" : g.config) << '\n';
  std::cout << "# redundancy = "
            << (mar_scenario_redundancy(s) == MAR_REDUNDANCY_PAPER ? "paper" : "reward") << '\n';
  std::cout << "# epsilon = " << fmt9(eps) << '\n';
}

int cmd_solve(const GlobalOptions& g, const std::string& csv_path, const std::string& dump_path) {
  const Scenario s = load_scenario(g);
  const Outcome oa = solve_oa(s.get());
  const Outcome greedy = solve_greedy(s.get());
  print_header(s.get(), g);

  std::ostringstream csv;
  csv << "algorithm,utility,iterations,selection";
  for (size_t n = 0; n < mar_scenario_num_users(s.get()); ++n) csv << ",power" << n + 1 << "_w";
  csv << '\n';
  for (const auto* o : {oa.get(), greedy.get()}) {
    const bool is_oa = o == oa.get();
    std::cout << (is_oa ? "oa     " : "greedy ") << " utility " << fmt9(mar_outcome_utility(o))
              << "  selection " << selection_of(o);
    if (is_oa) {
      std::cout << "  iterations " << mar_outcome_iterations(o) << "  gap "
                << fmt9(mar_outcome_gap(o));
    }
    std::cout << "\n        powers_w";
    csv << (is_oa ? "oa" : "greedy") << ',' << fmt9(mar_outcome_utility(o)) << ','
        << (is_oa ? mar_outcome_iterations(o) : 0) << ',' << selection_of(o);
    for (size_t n = 0; n < mar_outcome_num_users(o); ++n) {
      std::cout << ' ' << fmt9(mar_outcome_power(o, n));
      csv << ',' << fmt9(mar_outcome_power(o, n));
    }
    std::cout << '\n';
    csv << '\n';
  }
  if (!csv_path.empty()) write_file(g, csv_path, csv.str());
  if (!dump_path.empty()) {
    write_file(g, dump_path, read_text([&](char* b, size_t c) {
                 return mar_outcome_master_listing(oa.get(), b, c);
               }));
  }
  return kOk;
}

int cmd_sweep(const GlobalOptions& g, const std::string& param, const std::vector<double>& values) {
  static const std::pair<const char*, const char*> kKeys[] = {
      {"df", "distance_factor"}, {"power", "total_power_w"}, {"gamma", "gamma"}, {"lambda", "lambda"}};
  const char* key = nullptr;
  for (const auto& [name, k] : kKeys) {
    if (param == name) key = k;
  }
  if (!key) throw Failure{MAR_ERR_USAGE, "unknown sweep parameter '" + param + "'"};

  const Scenario base = load_scenario(g);
  std::ostringstream csv;
  csv << "param,value,utility_oa,utility_greedy,iters_oa,selection_oa,selection_greedy\n";
  int rows = 0;
  for (double v : values) {
    mar_scenario* raw = nullptr;
    check(mar_scenario_clone(base.get(), &raw));
    const Scenario s(raw);
    check(mar_scenario_set(s.get(), key, v), param + "=" + fmt9(v));
    mar_outcome* oa_raw = nullptr;
    mar_outcome* greedy_raw = nullptr;
    const mar_status st_oa = mar_solve_oa(s.get(), &oa_raw);
    const Outcome oa(oa_raw);
    if (st_oa == MAR_ERR_INFEASIBLE) {
      std::cerr << "marsolve: skipping " << param << '=' << fmt9(v) << ": " << mar_last_error()
                << '\n';
      continue;
    }
    check(st_oa, param + "=" + fmt9(v));
    check(mar_solve_greedy(s.get(), &greedy_raw), param + "=" + fmt9(v));
    const Outcome greedy(greedy_raw);
    csv << param << ',' << fmt9(v) << ',' << fmt9(mar_outcome_utility(oa.get())) << ','
        << fmt9(mar_outcome_utility(greedy.get())) << ',' << mar_outcome_iterations(oa.get())
        << ',' << selection_of(oa.get()) << ',' << selection_of(greedy.get()) << '\n';
    ++rows;
  }
  if (rows == 0) throw Failure{MAR_ERR_INFEASIBLE, "every sweep point is infeasible"};
  std::cout << csv.str();
  write_file(g, "sweep_" + param + ".csv", csv.str());
  write_file(g, "sweep_" + param + ".svg", marsolve::chart_from_csv(csv.str()));
  return kOk;
}

int cmd_trace(const GlobalOptions& g) {
  const Scenario s = load_scenario(g);
  const Outcome oa = solve_oa(s.get());
  const std::string csv =
      read_text([&](char* b, size_t c) { return mar_outcome_trace_csv(oa.get(), b, c); });
  print_header(s.get(), g);
  std::cout << csv;
  write_file(g, "trace.csv", csv);
  write_file(g, "trace.svg", marsolve::chart_from_csv(csv));
  return kOk;
}

int cmd_allocation(const GlobalOptions& g) {
  const Scenario s = load_scenario(g);
  const Outcome oa = solve_oa(s.get());
  const Outcome greedy = solve_greedy(s.get());
  std::ostringstream csv;
  csv << "user,distance_m,gain,tier_oa,power_oa_w,tier_greedy,power_greedy_w\n";
  for (size_t n = 0; n < mar_scenario_num_users(s.get()); ++n) {
    double d = 0.0, gain = 0.0;
    check(mar_user_distance(s.get(), n, &d));
    check(mar_user_gain(s.get(), n, &gain));
    csv << n + 1 << ',' << fmt9(d) << ',' << fmt9(gain) << ',' << mar_outcome_tier(oa.get(), n)
        << ',' << fmt9(mar_outcome_power(oa.get(), n)) << ',' << mar_outcome_tier(greedy.get(), n)
        << ',' << fmt9(mar_outcome_power(greedy.get(), n)) << '\n';
  }
  std::cout << csv.str();
  write_file(g, "allocation.csv", csv.str());
  return kOk;
}

int cmd_plot(const GlobalOptions& g, const std::string& csv_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw Failure{MAR_ERR_USAGE, "cannot read " + csv_path};
  std::ostringstream text;
  text << in.rdbuf();
  const auto name = std::filesystem::path(csv_path).stem().string() + ".svg";
  write_file(g, name, marsolve::chart_from_csv(text.str()));
  std::cout << (std::filesystem::path(g.out_dir) / name).string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resolution and power allocation solver for multi-user mobile AR downlinks"};
  GlobalOptions g;
  app.add_option("--config", g.config, "Scenario config file (default: built-in reference scenario)");
  app.add_option("--out", g.out_dir, "Directory for CSV and chart files")->capture_default_str();
  app.add_option("--redundancy", g.redundancy, "Redundancy sign convention")
      ->check(CLI::IsMember({"reward", "paper"}));
  app.add_option("--seed", g.seed, "Reserved; the model is deterministic");
  app.require_subcommand(1);

  std::string csv_path, dump_path;
  auto* solve = app.add_subcommand("solve", "Run OA and greedy on one scenario");
  solve->add_option("--csv", csv_path, "Also write the summary CSV under --out");
  solve->add_option("--dump-master", dump_path, "Write the final master problem listing under --out");

  std::string param;
  std::vector<double> values;
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and compare OA with greedy");
  sweep->add_option("--param", param, "Parameter to sweep")
      ->required()
      ->check(CLI::IsMember({"df", "power", "gamma", "lambda"}));
  sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');

  auto* trace = app.add_subcommand("trace", "OA bound convergence trace");
  auto* allocation = app.add_subcommand("allocation", "Per-user tiers and powers of both algorithms");

  std::string plot_csv;
  auto* plot = app.add_subcommand("plot", "Regenerate the chart of a sweep or trace CSV");
  plot->add_option("csv", plot_csv, "CSV file")->required();

  for (auto* sub : {solve, sweep, trace, allocation, plot}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) return cmd_solve(g, csv_path, dump_path);
    if (*sweep) return cmd_sweep(g, param, values);
    if (*trace) return cmd_trace(g);
    if (*allocation) return cmd_allocation(g);
    if (*plot) return cmd_plot(g, plot_csv);
  } catch (const Failure& f) {
    std::cerr << "marsolve: " << mar_status_name(f.status) << ": " << f.message << '\n';
    return static_cast<int>(f.status);
  } catch (const std::exception& e) {
    std::cerr << "marsolve: " << e.what() << '\n';
    return kSolver;
  }
  return kUsage;
}
