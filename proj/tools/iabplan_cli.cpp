// Copyright 2026 The iabplan Authors
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

// iabplan command-line entry point.
//
// Exit codes: 0 success / feasible, 1 infeasible or incomplete result,
// 2 usage error, 3 I/O or file-format error.

#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"

#include "iabplan.hpp"
#include "iabplan/tcp_server.hpp"

namespace {

using namespace iabplan;

enum Exit : int { kOk = 0, kInfeasible = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Instance load_instance(const std::string& path) { return Instance(load_scenario(path)); }

Deployment load_checked_deployment(const Instance& inst, const std::string& path) {
  auto d = load_deployment(inst, path);
  if (d.scenario_digest != scenario_digest(inst.scenario()))
    std::cerr << "warning: deployment was planned against a different scenario ("
              << d.scenario_path << ")\n";
  return d;
}

struct ScenarioFlags {
  std::string layout;
  std::string out;
  ScenarioOptions opt;
};

int run_scenario(const ScenarioFlags& f) {
  Layout layout;
  try {
    layout = parse_layout(f.layout);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (layout == Layout::kCustom) throw UsageError("layout must be pentagon, five_dice or vertical");
  Scenario s;
  try {
    s = build_grid_scenario(layout, f.opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid scenario: ") + e.what());
  }
  if (f.out.empty() || f.out == "-") {
    std::cout << serialize_scenario(s);
  } else {
    save_scenario(s, f.out);
    std::cerr << "wrote " << f.out << ": " << s.donors.size() << " donors, "
              << s.candidates.size() << " candidates, " << s.cells.size() << " cells\n";
  }
  return kOk;
}

struct PlanFlags {
  std::string scenario;
  std::string algorithm = "greedy";
  std::string out;
  std::uint64_t seed = 0;
  std::size_t max_candidates = 15;
};

int run_plan(const PlanFlags& f) {
  const Instance inst = load_instance(f.scenario);
  std::optional<PlanResult> result;
  if (f.algorithm == "greedy") {
    result = greedy_plan(inst);
  } else if (f.algorithm == "random") {
    result = random_plan(inst, f.seed);
  } else if (f.algorithm == "exact") {
    try {
      result = exact_plan(inst, {.max_candidates = f.max_candidates});
    } catch (const InstanceTooLarge& e) {
      throw UsageError(e.what());
    }
    if (!result) {
      std::cout << "algorithm exact: no feasible deployment exists\n";
      return kInfeasible;
    }
  } else {
    throw UsageError("unknown algorithm '" + f.algorithm + "'");
  }
  Deployment d{f.scenario, scenario_digest(inst.scenario()), result->algorithm, result->complete,
               result->state};
  if (!f.out.empty()) save_deployment(inst, d, f.out);
  const auto cov = coverage_indicators(inst, result->state);
  const auto vulnerable = resilience_check(inst, result->state);
  std::cout << "algorithm " << result->algorithm << ": " << result->node_count(inst.scenario())
            << " nodes, coverage " << std::fixed << std::setprecision(4) << cov.fraction << " ("
            << cov.covered_count << "/" << inst.scenario().cells.size() << " cells), "
            << vulnerable.size() << " vulnerable, " << (result->complete ? "complete" : "incomplete")
            << "\n";
  return result->complete ? kOk : kInfeasible;
}

int run_check(const std::string& scenario, const std::string& deployment, const std::string& out) {
  const Instance inst = load_instance(scenario);
  const auto d = load_checked_deployment(inst, deployment);
  const auto report = check_all(inst, d.state);
  const auto text = report_to_json(report).dump(2) + "\n";
  if (out.empty()) std::cout << text;
  else write_file(out, text);
  return report.overall_feasible ? kOk : kInfeasible;
}

struct ResilienceFlags {
  std::string scenario;
  std::string deployment;
  std::vector<double> fractions{0.1, 0.2, 0.3};
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  bool per_trial = false;
  bool json = false;
};

int run_resilience(const ResilienceFlags& f) {
  if (f.trials < 1) throw UsageError("--trials must be >= 1");
  for (double x : f.fractions)
    if (!(x >= 0.0 && x <= 1.0)) throw UsageError("failure fractions must lie in [0, 1]");
  const Instance inst = load_instance(f.scenario);
  const auto d = load_checked_deployment(inst, f.deployment);
  const auto stats = run_trials(inst, d.state, f.fractions, f.trials, f.seed);
  if (f.json) {
    auto rows = nlohmann::json::array();
    for (const auto& s : stats) {
      nlohmann::json row = {{"failure_fraction", s.failure_fraction}, {"trials", s.trials},
                            {"retention_mean", s.retention_mean},
                            {"retention_std", s.retention_std},
                            {"retention_min", s.retention_min}};
      if (f.per_trial) row["retentions"] = s.retentions;
      rows.push_back(row);
    }
    std::cout << rows.dump(2) << "\n";
    return kOk;
  }
  std::cout << "fraction\ttrials\tmean\tstd\tmin\n" << std::fixed << std::setprecision(6);
  for (const auto& s : stats) {
    std::cout << std::setprecision(2) << s.failure_fraction << "\t" << s.trials << "\t"
              << std::setprecision(6) << s.retention_mean << "\t" << s.retention_std << "\t"
              << s.retention_min;
    if (f.per_trial)
      for (double r : s.retentions) std::cout << "\t" << r;
    std::cout << "\n";
  }
  return kOk;
}

struct ServeFlags {
  std::string scenario;
  std::string transport = "stdio";
  std::uint16_t port = 5555;
  std::size_t max_sessions = 0;
  bool any_address = false;
  EnvConfig env;
};

int run_serve(const ServeFlags& f) {
  auto inst = std::make_shared<const Instance>(load_scenario(f.scenario));
  if (f.transport == "stdio") {
    protocol::serve_stream(inst, std::cin, std::cout, f.env);
    return kOk;
  }
  if (f.transport != "tcp") throw UsageError("transport must be stdio or tcp");
  std::unique_ptr<protocol::TcpServer> server;
  try {
    server = std::make_unique<protocol::TcpServer>(inst, f.port, f.env, !f.any_address);
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
  std::cerr << "listening on port " << server->port() << "\n";
  server->serve(f.max_sessions);
  return kOk;
}

int run_heatmap(const std::string& scenario, const std::string& deployment, const std::string& out) {
  const Instance inst = load_instance(scenario);
  const auto d = load_checked_deployment(inst, deployment);
  const auto text = heatmap_csv(received_power_grid(inst, d.state));
  if (out.empty() || out == "-") std::cout << text;
  else write_file(out, text);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilient mmWave IAB deployment planning toolkit"};
  app.require_subcommand(1);

  ScenarioFlags sf;
  auto* scen = app.add_subcommand("scenario", "Generate a grid scenario file");
  scen->add_option("layout", sf.layout, "pentagon | five_dice | vertical")->required();
  scen->add_option("-o,--out", sf.out, "Output path (stdout when omitted)");
  scen->add_option("--width", sf.opt.width_m, "Area width in metres");
  scen->add_option("--height", sf.opt.height_m, "Area height in metres");
  scen->add_option("--spacing", sf.opt.grid_spacing_m, "Candidate grid spacing in metres");
  scen->add_option("--theta-cov", sf.opt.policy.theta_cov, "Coverage target fraction");
  scen->add_option("--m", sf.opt.policy.m, "Minimum inbound backhaul links");
  scen->add_option("--beta", sf.opt.policy.beta, "Reserved link capacity fraction");
  scen->add_option("--overhead", sf.opt.policy.overhead, "Per-hop protocol overhead factor");
  scen->add_option("--degree-cap", sf.opt.backhaul_degree_cap, "Encoder graph out-degree cap");
  scen->add_option("--demand", sf.opt.demand_mbps, "Access demand per node (Mbps)");
  scen->add_option("--fiber", sf.opt.donor_fiber_mbps, "Donor fiber capacity (Mbps)");
  scen->add_option("--tx-power", sf.opt.radio.tx_power_dbm, "Transmit power (dBm)");
  scen->add_option("--access-gain", sf.opt.radio.access_gain_dbi, "Combined access gain (dBi)");
  scen->add_option("--bandwidth", sf.opt.radio.bandwidth_mhz, "Bandwidth (MHz)");
  scen->add_option("--atm", sf.opt.radio.atm_db_per_km, "Atmospheric absorption (dB/km)");
  scen->add_option("--rain", sf.opt.radio.rain_db_per_km, "Rain attenuation (dB/km)");

  PlanFlags pf;
  auto* plan = app.add_subcommand("plan", "Plan a deployment");
  plan->add_option("scenario", pf.scenario, "Scenario file")->required();
  plan->add_option("-a,--algorithm", pf.algorithm, "greedy | exact | random");
  plan->add_option("-o,--out", pf.out, "Deployment output path");
  plan->add_option("--seed", pf.seed, "Seed for the random planner");
  plan->add_option("--max-candidates", pf.max_candidates, "Size guard for the exact planner");

  std::string check_scenario, check_deployment, check_out;
  auto* check = app.add_subcommand("check", "Validate a deployment against all constraints");
  check->add_option("scenario", check_scenario)->required();
  check->add_option("deployment", check_deployment)->required();
  check->add_option("-o,--out", check_out, "Write the report here instead of stdout");

  ResilienceFlags rf;
  auto* res = app.add_subcommand("resilience", "Random link-failure trials");
  res->add_option("scenario", rf.scenario)->required();
  res->add_option("deployment", rf.deployment)->required();
  res->add_option("--fractions", rf.fractions, "Failure fractions")->delimiter(',');
  res->add_option("--trials", rf.trials, "Trials per fraction");
  res->add_option("--seed", rf.seed, "Master seed");
  res->add_flag("--per-trial", rf.per_trial, "Emit every trial's retention");
  res->add_flag("--json", rf.json, "JSON output");

  ServeFlags vf;
  auto* serve = app.add_subcommand("serve-env", "Run the environment service");
  serve->add_option("scenario", vf.scenario)->required();
  serve->add_option("--transport", vf.transport, "stdio | tcp");
  serve->add_option("--port", vf.port, "TCP port");
  serve->add_option("--max-sessions", vf.max_sessions, "Exit after this many TCP sessions");
  serve->add_flag("--any-address", vf.any_address, "Listen on all interfaces");
  serve->add_option("--kappa-coverage", vf.env.weights.coverage);
  serve->add_option("--kappa-deploy", vf.env.weights.deploy);
  serve->add_option("--kappa-vulnerable", vf.env.weights.vulnerable);
  serve->add_option("--step-limit", vf.env.step_limit, "0 = number of candidates");

  std::string hm_scenario, hm_deployment, hm_out;
  auto* heat = app.add_subcommand("export-heatmap", "Per-cell best received power grid (CSV)");
  heat->add_option("scenario", hm_scenario)->required();
  heat->add_option("deployment", hm_deployment)->required();
  heat->add_option("-o,--out", hm_out, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*scen) return run_scenario(sf);
    if (*plan) return run_plan(pf);
    if (*check) return run_check(check_scenario, check_deployment, check_out);
    if (*res) return run_resilience(rf);
    if (*serve) return run_serve(vf);
    if (*heat) return run_heatmap(hm_scenario, hm_deployment, hm_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}
