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

// Shared scenario fixtures for the unit and acceptance tests.

#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "iabplan.hpp"

namespace fixtures {

using namespace iabplan;

// 6 x 6 grid of 50 m sites (300 x 300 m), donors at the listed grid points.
inline Scenario toy_grid(const std::vector<Position>& donors, ScenarioOptions opt = {}) {
  opt.width_m = 300.0;
  opt.height_m = 300.0;
  opt.grid_spacing_m = 50.0;
  std::vector<Position> candidates;
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i) {
      const Position p{50.0 * i, 50.0 * j};
      bool is_donor = false;
      for (const auto& d : donors) is_donor = is_donor || d == p;
      if (!is_donor) candidates.push_back(p);
    }
  return make_scenario(opt, donors, candidates);
}

inline Scenario toy_one_donor(ScenarioOptions opt = {}) { return toy_grid({{150.0, 150.0}}, opt); }

// A one-row strip where sequential greedy needs 4 nodes but 3 suffice.
// Cells 0..16 sit at x = 50 i + 25; the two donors cover cells 0 and 1.
inline Scenario set_cover_gadget() {
  ScenarioOptions opt;
  opt.width_m = 850.0;
  opt.height_m = 50.0;
  opt.grid_spacing_m = 50.0;
  opt.policy.theta_cov = 1.0;
  auto centre = [](int cell) { return Position{50.0 * cell + 25.0, 25.0}; };
  return make_scenario(opt, {{0.0, 0.0}, {0.0, 50.0}},
                       {centre(7), centre(12), centre(4), centre(9), centre(14)});
}

// Random state over `inst`: deployments, links and flows are drawn so that
// every constraint is sometimes satisfied and sometimes violated.
inline NetworkState random_state(const Instance& inst, std::mt19937_64& gen) {
  const auto& s = inst.scenario();
  const std::size_t n = s.node_count();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto chance = [&](double p) { return unit(gen) < p; };
  NetworkState st = inst.initial_state();
  const double density = unit(gen);
  for (const auto& c : s.candidates) st.deployed[c.id] = chance(density);

  const int mode = static_cast<int>(gen() % 3);
  if (mode == 0) {
    // Planner-style: incremental activation.
    NetworkState built = inst.initial_state();
    for (const auto& c : s.candidates)
      if (st.deployed[c.id]) deploy(inst, built, c.id);
    st = built;
  } else {
    // Arbitrary links, some of them illegal.
    const double link_p = 0.02 + 0.2 * unit(gen);
    for (NodeId p = 0; p < n; ++p)
      for (NodeId q = 0; q < n; ++q) {
        if (!chance(link_p)) continue;
        const bool legal = p != q && st.is_deployed(p) && st.is_deployed(q) && s.is_candidate(q);
        if (legal || chance(0.1)) st.active_links.insert({p, q});
      }
    st.flows_mbps = allocate_flows(inst, st).flows_mbps;
    refresh_coverage(inst, st);
  }

  // Roughly a third of planner-style states stay untouched.
  if (mode == 0 && chance(0.35)) return st;

  // Perturb flows: rescale, drop, add stray entries.
  std::vector<Link> keys;
  for (const auto& [l, r] : st.flows_mbps) keys.push_back(l);
  for (const auto& l : keys) {
    if (chance(0.1)) st.flows_mbps.erase(l);
    else if (chance(0.15)) st.flows_mbps[l] *= 0.5 + unit(gen);
    else if (chance(0.05)) st.flows_mbps[l] = 20000.0 * unit(gen);
  }
  if (chance(0.3)) {
    const NodeId p = gen() % n, q = gen() % n;
    st.flows_mbps[{p, q}] = 500.0 * unit(gen);
  }
  if (chance(0.2) && !s.donors.empty()) {
    // Overload a donor through a huge first hop.
    for (const auto& l : st.active_links)
      if (s.is_donor(l.src)) {
        st.flows_mbps[l] = s.donors[l.src].fiber_mbps;
        break;
      }
  }
  // Claimed coverage: mostly honest, occasionally over-claimed.
  if (chance(0.2))
    for (std::size_t k = 0; k < st.covered_cells.size(); ++k)
      if (chance(0.1)) st.covered_cells[k] = true;
  return st;
}

// Same nodes, but only the routing-forest parent links: a single-path
// deployment to compare redundant meshes against.
inline NetworkState routing_tree(const Instance& inst, const NetworkState& st) {
  const auto fa = allocate_flows(inst, st);
  NetworkState tree = st;
  tree.active_links.clear();
  for (const auto& c : inst.scenario().candidates)
    if (st.is_deployed(c.id) && fa.parent[c.id] != FlowAllocation::npos)
      tree.active_links.insert({fa.parent[c.id], c.id});
  tree.flows_mbps = allocate_flows(inst, tree).flows_mbps;
  return tree;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("iabplan_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures
