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

// Problem instances: service area, donors, candidate sites, coverage cells,
// demand and planning policy.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iabplan/geometry.hpp"
#include "iabplan/propagation.hpp"

namespace iabplan {

enum class Layout { kPentagon, kFiveDice, kVertical, kCustom };

inline std::string_view layout_name(Layout layout) {
  switch (layout) {
    case Layout::kPentagon: return "pentagon";
    case Layout::kFiveDice: return "five_dice";
    case Layout::kVertical: return "vertical";
    case Layout::kCustom: return "custom";
  }
  return "custom";
}

inline Layout parse_layout(std::string_view name) {
  if (name == "pentagon") return Layout::kPentagon;
  if (name == "five_dice") return Layout::kFiveDice;
  if (name == "vertical") return Layout::kVertical;
  if (name == "custom") return Layout::kCustom;
  throw std::invalid_argument("unknown layout '" + std::string(name) + "'");
}

// Planning targets shared by the constraint checker, planners and the
// environment's global features.
struct PolicyParams {
  double theta_cov = 0.98;  // target covered-cell fraction
  int m = 2;                // minimum inbound backhaul links per node
  double beta = 0.2;        // reserved link capacity fraction
  double overhead = 1.2;    // per-hop protocol overhead factor R_o

  friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

struct Site {
  NodeId id = 0;
  Position position;
  double demand_mbps = 100.0;

  friend bool operator==(const Site&, const Site&) = default;
};

struct Donor : Site {
  double fiber_mbps = 10000.0;

  friend bool operator==(const Donor&, const Donor&) = default;
};

struct Cell {
  CellId id = 0;
  Position center;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Scenario {
  Layout layout = Layout::kCustom;
  double width_m = 1000.0;
  double height_m = 1000.0;
  double grid_spacing_m = 50.0;
  std::vector<Donor> donors;      // ids 0 .. D-1
  std::vector<Site> candidates;   // ids D .. N-1
  std::vector<Cell> cells;
  propagation::RadioParams radio;
  PolicyParams policy;
  std::size_t backhaul_degree_cap = 8;

  std::size_t node_count() const { return donors.size() + candidates.size(); }
  bool is_donor(NodeId v) const { return v < donors.size(); }
  bool is_candidate(NodeId v) const {
    return v >= donors.size() && v < node_count();
  }

  const Site& site(NodeId v) const {
    if (v >= node_count()) throw std::out_of_range("unknown node id " + std::to_string(v));
    return is_donor(v) ? static_cast<const Site&>(donors[v])
                       : candidates[v - donors.size()];
  }
  const Position& position(NodeId v) const { return site(v).position; }
  double demand_mbps(NodeId v) const { return site(v).demand_mbps; }

  double max_demand_mbps() const {
    double a = 0.0;
    for (const auto& d : donors) a = std::max(a, d.demand_mbps);
    for (const auto& c : candidates) a = std::max(a, c.demand_mbps);
    return a;
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline bool inside_area(const Position& p, double width_m, double height_m) {
  return p.x >= 0.0 && p.y >= 0.0 && p.x <= width_m && p.y <= height_m;
}

// Throws std::invalid_argument naming the violated invariant.
inline void validate(const Scenario& s) {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!(s.width_m > 0.0) || !(s.height_m > 0.0)) fail("area must be positive");
  if (!(s.grid_spacing_m > 0.0)) fail("grid_spacing_m must be positive");
  if (s.donors.empty()) fail("at least one donor is required");
  const auto& p = s.policy;
  if (!(p.theta_cov >= 0.0 && p.theta_cov <= 1.0))
    fail("policy.theta_cov must lie in [0, 1]");
  if (p.m < 1) fail("policy.m must be >= 1");
  if (!(p.beta >= 0.0 && p.beta < 1.0)) fail("policy.beta must lie in [0, 1)");
  if (!(p.overhead > 1.0) || !std::isfinite(p.overhead))
    fail("policy.overhead must be > 1");
  if (s.backhaul_degree_cap < 1) fail("backhaul_degree_cap must be >= 1");
  propagation::validate(s.radio);

  for (std::size_t i = 0; i < s.donors.size(); ++i) {
    const auto& d = s.donors[i];
    if (d.id != i) fail("donor ids must be 0..D-1 in order");
    if (!inside_area(d.position, s.width_m, s.height_m))
      fail("donor " + std::to_string(d.id) + " outside area");
    if (!(d.demand_mbps > 0.0)) fail("donor demand must be > 0");
    if (!(d.fiber_mbps > 0.0)) fail("donor fiber capacity must be > 0");
  }
  for (std::size_t i = 0; i < s.candidates.size(); ++i) {
    const auto& c = s.candidates[i];
    if (c.id != s.donors.size() + i)
      fail("candidate ids must follow donor ids contiguously");
    if (!inside_area(c.position, s.width_m, s.height_m))
      fail("candidate " + std::to_string(c.id) + " outside area");
    if (!(c.demand_mbps >= 0.0)) fail("candidate demand must be >= 0");
  }
  for (std::size_t k = 0; k < s.cells.size(); ++k) {
    if (s.cells[k].id != k) fail("cell ids must be 0..K-1 in order");
    if (!inside_area(s.cells[k].center, s.width_m, s.height_m))
      fail("cell " + std::to_string(k) + " outside area");
  }
  if (s.cells.empty()) fail("scenario has no coverage cells");
}

namespace detail {

inline std::size_t tiles_along(double length_m, double spacing_m) {
  const double n = length_m / spacing_m;
  const double rounded = std::round(n);
  if (rounded < 1.0 || std::abs(n - rounded) > 1e-9)
    throw std::invalid_argument("grid spacing must divide the area dimensions");
  return static_cast<std::size_t>(rounded);
}

}  // namespace detail

// One cell per spacing x spacing tile, represented by the tile centre.
// Row-major from the south-west corner.
inline std::vector<Cell> coverage_cells(double width_m, double height_m,
                                        double spacing_m) {
  const std::size_t nx = detail::tiles_along(width_m, spacing_m);
  const std::size_t ny = detail::tiles_along(height_m, spacing_m);
  std::vector<Cell> cells;
  cells.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      cells.push_back({cells.size(),
                       {(static_cast<double>(i) + 0.5) * spacing_m,
                        (static_cast<double>(j) + 0.5) * spacing_m}});
  return cells;
}

inline std::vector<Cell> coverage_cells(const Scenario& s) {
  return coverage_cells(s.width_m, s.height_m, s.grid_spacing_m);
}

// Everything a caller may want to tune when generating an instance.
struct ScenarioOptions {
  double width_m = 1000.0;
  double height_m = 1000.0;
  double grid_spacing_m = 50.0;
  propagation::RadioParams radio;
  PolicyParams policy;
  double demand_mbps = 100.0;
  double donor_fiber_mbps = 10000.0;
  std::size_t backhaul_degree_cap = 8;
};

// Assembles a scenario from explicit donor and candidate positions; cells
// tile the area at the grid spacing.
inline Scenario make_scenario(const ScenarioOptions& opt,
                              const std::vector<Position>& donor_positions,
                              const std::vector<Position>& candidate_positions,
                              Layout layout = Layout::kCustom) {
  Scenario s;
  s.layout = layout;
  s.width_m = opt.width_m;
  s.height_m = opt.height_m;
  s.grid_spacing_m = opt.grid_spacing_m;
  s.radio = opt.radio;
  s.policy = opt.policy;
  s.backhaul_degree_cap = opt.backhaul_degree_cap;
  for (const auto& p : donor_positions) {
    Donor d;
    d.id = s.donors.size();
    d.position = p;
    d.demand_mbps = opt.demand_mbps;
    d.fiber_mbps = opt.donor_fiber_mbps;
    s.donors.push_back(d);
  }
  for (const auto& p : candidate_positions)
    s.candidates.push_back({s.donors.size() + s.candidates.size(), p, opt.demand_mbps});
  s.cells = coverage_cells(opt.width_m, opt.height_m, opt.grid_spacing_m);
  validate(s);
  return s;
}

// Donor coordinates for the named layouts, as fractions of the area so they
// scale with non-default dimensions.
inline std::vector<Position> layout_donor_positions(Layout layout, double width_m,
                                                    double height_m) {
  std::vector<Position> out;
  switch (layout) {
    case Layout::kFiveDice:
      for (auto [fx, fy] : std::array<std::array<double, 2>, 5>{
               {{0.25, 0.25}, {0.75, 0.25}, {0.5, 0.5}, {0.25, 0.75}, {0.75, 0.75}}})
        out.push_back({fx * width_m, fy * height_m});
      break;
    case Layout::kVertical:
      for (double fy : {0.1, 0.3, 0.5, 0.7, 0.9})
        out.push_back({0.5 * width_m, fy * height_m});
      break;
    case Layout::kPentagon: {
      const double radius = 0.3 * std::min(width_m, height_m);
      for (int k = 0; k < 5; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / 5.0;  // from north, clockwise
        out.push_back({0.5 * width_m + radius * std::sin(angle),
                       0.5 * height_m + radius * std::cos(angle)});
      }
      break;
    }
    case Layout::kCustom:
      throw std::invalid_argument("custom layout has no generated donor positions");
  }
  return out;
}

// Candidate sites at every (i*spacing, j*spacing) grid point; each donor is
// snapped to its nearest grid point and takes that point's place.
inline Scenario build_grid_scenario(Layout layout, const ScenarioOptions& opt = {}) {
  const std::size_t nx = detail::tiles_along(opt.width_m, opt.grid_spacing_m);
  const std::size_t ny = detail::tiles_along(opt.height_m, opt.grid_spacing_m);
  std::vector<Position> grid;
  grid.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      grid.push_back({static_cast<double>(i) * opt.grid_spacing_m,
                      static_cast<double>(j) * opt.grid_spacing_m});

  std::vector<bool> taken(grid.size(), false);
  std::vector<Position> donors;
  for (const auto& want : layout_donor_positions(layout, opt.width_m, opt.height_m)) {
    std::size_t best = grid.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double d = distance_m(want, grid[g]);
      if (d < best_d - 1e-9) {
        best_d = d;
        best = g;
      }
    }
    if (taken[best])
      throw std::invalid_argument("two donors snap to the same grid point");
    taken[best] = true;
    donors.push_back(grid[best]);
  }
  std::vector<Position> candidates;
  for (std::size_t g = 0; g < grid.size(); ++g)
    if (!taken[g]) candidates.push_back(grid[g]);
  return make_scenario(opt, donors, candidates, layout);
}

}  // namespace iabplan
