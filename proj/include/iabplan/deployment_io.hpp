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

// Deployment result files, constraint reports and the received-power
// heat map export.

#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "iabplan/constraints.hpp"
#include "iabplan/instance.hpp"
#include "iabplan/scenario_io.hpp"

namespace iabplan {

inline constexpr int kDeploymentFormatVersion = 1;

struct Deployment {
  std::string scenario_path;
  std::uint64_t scenario_digest = 0;
  std::string algorithm;
  bool complete = false;
  NetworkState state;
};

inline std::string serialize_deployment(const Instance& inst, const Deployment& d) {
  const auto& s = inst.scenario();
  const auto cov = coverage_indicators(inst, d.state);
  nlohmann::json j;
  j["format_version"] = kDeploymentFormatVersion;
  j["scenario"] = {{"path", d.scenario_path}, {"digest", d.scenario_digest}};
  j["algorithm"] = d.algorithm;
  j["complete"] = d.complete;
  j["deployed"] = deployed_candidates(s, d.state);
  auto& links = j["active_links"] = nlohmann::json::array();
  for (const auto& l : d.state.active_links) links.push_back({l.src, l.dst});
  auto& flows = j["flows"] = nlohmann::json::array();
  for (const auto& [l, r] : d.state.flows_mbps) flows.push_back({l.src, l.dst, r});
  std::vector<CellId> covered;
  for (CellId k = 0; k < d.state.covered_cells.size(); ++k)
    if (d.state.covered_cells[k]) covered.push_back(k);
  j["covered_cells"] = covered;
  j["coverage_fraction"] = cov.fraction;
  return j.dump(2) + "\n";
}

// Structural checks only (ids in range); constraint violations are left for
// check_all() to report.
inline Deployment parse_deployment(const Instance& inst, const std::string& text) {
  using namespace json_detail;
  const auto& s = inst.scenario();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("deployment is not valid JSON: ") + e.what());
  }
  const auto version = integer(j, "format_version", "");
  if (version != kDeploymentFormatVersion)
    throw ParseError("unsupported deployment format_version " + std::to_string(version));
  Deployment d;
  const auto& sc = require(j, "scenario", "");
  const auto& path = require(sc, "path", "scenario");
  if (!path.is_string()) throw ParseError("field 'scenario.path' must be a string");
  d.scenario_path = path.get<std::string>();
  const auto& digest = require(sc, "digest", "scenario");
  if (!digest.is_number_unsigned()) throw ParseError("field 'scenario.digest' must be unsigned");
  d.scenario_digest = digest.get<std::uint64_t>();
  const auto& algo = require(j, "algorithm", "");
  if (!algo.is_string()) throw ParseError("field 'algorithm' must be a string");
  d.algorithm = algo.get<std::string>();
  const auto& complete = require(j, "complete", "");
  if (!complete.is_boolean()) throw ParseError("field 'complete' must be a boolean");
  d.complete = complete.get<bool>();

  auto node = [&](const nlohmann::json& v, const char* field) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= s.node_count())
      throw ParseError(std::string("field '") + field + "' holds an unknown node id");
    return static_cast<NodeId>(v.get<std::uint64_t>());
  };
  d.state = NetworkState::initial(s);
  for (const auto& v : array(j, "deployed", "")) d.state.deployed[node(v, "deployed")] = true;
  for (const auto& l : array(j, "active_links", "")) {
    if (!l.is_array() || l.size() != 2) throw ParseError("field 'active_links' entries must be [src, dst]");
    d.state.active_links.insert({node(l[0], "active_links"), node(l[1], "active_links")});
  }
  for (const auto& f : array(j, "flows", "")) {
    if (!f.is_array() || f.size() != 3 || !f[2].is_number())
      throw ParseError("field 'flows' entries must be [src, dst, mbps]");
    d.state.flows_mbps[{node(f[0], "flows"), node(f[1], "flows")}] = f[2].get<double>();
  }
  for (const auto& k : array(j, "covered_cells", "")) {
    if (!k.is_number_unsigned() || k.get<std::uint64_t>() >= s.cells.size())
      throw ParseError("field 'covered_cells' holds an unknown cell id");
    d.state.covered_cells[k.get<std::size_t>()] = true;
  }
  return d;
}

inline void save_deployment(const Instance& inst, const Deployment& d, const std::string& path) {
  write_file(path, serialize_deployment(inst, d));
}

inline Deployment load_deployment(const Instance& inst, const std::string& path) {
  return parse_deployment(inst, read_file(path));
}

inline nlohmann::json report_to_json(const ConstraintReport& r) {
  auto links = [](const std::vector<Link>& ls) {
    auto a = nlohmann::json::array();
    for (const auto& l : ls) a.push_back({l.src, l.dst});
    return a;
  };
  nlohmann::json j;
  j["overall_feasible"] = r.overall_feasible;
  j["objective_value"] = r.objective_value;
  j["coverage"] = {{"fraction", r.coverage_fraction},
                   {"covered_cells", r.covered_cells},
                   {"required_cells", r.required_cells},
                   {"ok", r.coverage_ok},
                   {"claim_violations", r.coverage_claim_violations}};
  j["link_activation_violations"] = links(r.link_activation_violations);
  j["vulnerable_nodes"] = r.vulnerable_nodes;
  j["link_capacity_violations"] = links(r.link_capacity_violations);
  j["donor_capacity_violations"] = r.donor_capacity_violations;
  j["flow_conservation_violations"] = r.flow_conservation_violations;
  return j;
}

// Written for cells no deployed node covers; below the -96 dBm display floor.
inline constexpr double kUncoveredSentinelDbm = -999.0;

// Best access received power per cell over deployed nodes that meet the SNR
// threshold. Rows run south to north, columns west to east.
inline std::vector<std::vector<double>> received_power_grid(const Instance& inst,
                                                            const NetworkState& st) {
  const auto& s = inst.scenario();
  const auto cols = static_cast<std::size_t>(std::llround(s.width_m / s.grid_spacing_m));
  const auto rows = static_cast<std::size_t>(std::llround(s.height_m / s.grid_spacing_m));
  std::vector<std::vector<double>> grid(rows, std::vector<double>(cols, kUncoveredSentinelDbm));
  for (const auto& cell : s.cells) {
    const auto c = std::min(cols - 1, static_cast<std::size_t>(cell.center.x / s.grid_spacing_m));
    const auto r = std::min(rows - 1, static_cast<std::size_t>(cell.center.y / s.grid_spacing_m));
    double best = kUncoveredSentinelDbm;
    for (NodeId v = 0; v < s.node_count(); ++v)
      if (st.is_deployed(v) && inst.coverage().covers(v, cell.id))
        best = std::max(best, inst.coverage().rx_power_dbm(v, cell.id));
    grid[r][c] = best;
  }
  return grid;
}

inline std::string heatmap_csv(const std::vector<std::vector<double>>& grid) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

}  // namespace iabplan
