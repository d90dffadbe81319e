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

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "iabplan/netgraph.hpp"
#include "iabplan/propagation.hpp"
#include "iabplan/scenario.hpp"

namespace iabplan {

// A UE standing at the mast is evaluated at this distance.
inline constexpr double kMinAccessDistanceM = 1.0;

// Node-to-cell access feasibility (C_ik / C_jk) and received power.
class CoverageMap {
 public:
  explicit CoverageMap(const Scenario& s)
      : nodes_(s.node_count()), cells_(s.cells.size()) {
    covers_.assign(nodes_ * cells_, 0);
    rx_dbm_.assign(nodes_ * cells_, 0.0);
    cells_of_.resize(nodes_);
    for (NodeId v = 0; v < nodes_; ++v) {
      for (CellId k = 0; k < cells_; ++k) {
        const double d = std::max(kMinAccessDistanceM,
                                  distance_m(s.position(v), s.cells[k].center));
        const auto b = propagation::evaluate_distance(d, propagation::LinkKind::kAccess, s.radio);
        rx_dbm_[v * cells_ + k] = b.rx_power_dbm;
        if (b.feasible) {
          covers_[v * cells_ + k] = 1;
          cells_of_[v].push_back(k);
        }
      }
    }
  }

  bool covers(NodeId v, CellId k) const { return covers_[v * cells_ + k] != 0; }
  double rx_power_dbm(NodeId v, CellId k) const { return rx_dbm_[v * cells_ + k]; }
  const std::vector<CellId>& cells_of(NodeId v) const { return cells_of_[v]; }
  std::size_t cell_count() const { return cells_; }

 private:
  std::size_t nodes_;
  std::size_t cells_;
  std::vector<std::uint8_t> covers_;
  std::vector<double> rx_dbm_;
  std::vector<std::vector<CellId>> cells_of_;
};

// Scenario plus its per-scenario derived tables. Immutable once built.
class Instance {
 public:
  explicit Instance(Scenario s)
      : scenario_((validate(s), std::move(s))), topology_(scenario_), coverage_(scenario_) {}

  const Scenario& scenario() const { return scenario_; }
  const Topology& topology() const { return topology_; }
  const CoverageMap& coverage() const { return coverage_; }

  // Donors only, with their own footprint marked covered.
  NetworkState initial_state() const {
    auto st = NetworkState::initial(scenario_);
    for (const auto& d : scenario_.donors)
      for (CellId k : coverage_.cells_of(d.id)) st.covered_cells[k] = true;
    return st;
  }

  // Smallest covered-cell count meeting the coverage target.
  std::size_t coverage_target_cells() const {
    const double want = scenario_.policy.theta_cov * static_cast<double>(scenario_.cells.size());
    return static_cast<std::size_t>(std::ceil(want - 1e-9));
  }

 private:
  Scenario scenario_;
  Topology topology_;
  CoverageMap coverage_;
};

inline AttributedGraph build_graph(const Instance& inst, const NetworkState& st) {
  return build_graph(inst.scenario(), inst.topology(), st);
}

}  // namespace iabplan
