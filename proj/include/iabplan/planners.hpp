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

// Deployment planners: greedy coverage maximisation, an exact minimum-node
// oracle for small instances, and a seeded random baseline.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "iabplan/constraints.hpp"
#include "iabplan/instance.hpp"
#include "iabplan/netgraph.hpp"
#include "iabplan/rng.hpp"

namespace iabplan {

struct PlanResult {
  NetworkState state;
  bool complete = false;  // coverage target met
  std::string algorithm;

  std::size_t node_count(const Scenario& s) const { return deployed_candidates(s, state).size(); }
};

class InstanceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Deployed nodes p != q with a feasible link p -> q.
inline std::vector<NodeId> feasible_deployed_sources(const Instance& inst, const NetworkState& st,
                                                     NodeId q) {
  std::vector<NodeId> out;
  for (NodeId p = 0; p < inst.scenario().node_count(); ++p)
    if (p != q && st.is_deployed(p) && inst.topology().feasible(p, q)) out.push_back(p);
  return out;
}

inline void refresh_coverage(const Instance& inst, NetworkState& st) {
  st.covered_cells = coverage_indicators(inst, st).covered;
}

// Links a freshly deployed node into the mesh: inbound links from its m
// highest-capacity feasible deployed sources (lower id on ties), then one
// link from the new node to every earlier node still short of m inbound
// links. Flows and coverage are recomputed; the allocation is returned so
// callers can gate on it.
inline FlowAllocation activate_links(const Instance& inst, NetworkState& st, NodeId new_node) {
  const auto& s = inst.scenario();
  const auto& topo = inst.topology();
  if (!s.is_candidate(new_node) || !st.is_deployed(new_node))
    throw std::invalid_argument("activate_links: node " + std::to_string(new_node) +
                                " is not a deployed candidate");
  const auto m = static_cast<std::size_t>(s.policy.m);

  auto sources = feasible_deployed_sources(inst, st, new_node);
  std::stable_sort(sources.begin(), sources.end(), [&](NodeId a, NodeId b) {
    return topo.capacity_mbps(a, new_node) > topo.capacity_mbps(b, new_node);
  });
  const auto existing = inbound_degree(st, new_node);
  for (std::size_t i = 0; i < sources.size() && existing + i < m; ++i)
    st.active_links.insert({sources[i], new_node});

  const auto degree = inbound_degrees(s.node_count(), st);
  for (const auto& c : s.candidates) {
    if (c.id == new_node || !st.is_deployed(c.id)) continue;
    if (degree[c.id] >= m || !topo.feasible(new_node, c.id)) continue;
    st.active_links.insert({new_node, c.id});
  }

  auto alloc = allocate_flows(inst, st);
  st.flows_mbps = alloc.flows_mbps;
  refresh_coverage(inst, st);
  return alloc;
}

inline FlowAllocation deploy(const Instance& inst, NetworkState& st, NodeId node) {
  st.deployed.at(node) = true;
  return activate_links(inst, st, node);
}

// Sequential greedy: deploy the candidate with the largest marginal cell
// gain whose activation leaves the flow allocation satisfiable. Resilience
// is recorded, not enforced. Ties prefer more feasible deployed sources,
// then the lower id.
inline PlanResult greedy_plan(const Instance& inst) {
  const auto& s = inst.scenario();
  const auto& cov = inst.coverage();
  PlanResult out;
  out.algorithm = "greedy";
  out.state = inst.initial_state();
  auto& st = out.state;
  const std::size_t target = inst.coverage_target_cells();
  std::size_t covered = coverage_indicators(inst, st).covered_count;

  while (covered < target) {
    struct Option {
      std::size_t gain;
      std::size_t sources;
      NodeId id;
    };
    std::vector<Option> options;
    for (const auto& c : s.candidates) {
      if (st.deployed[c.id]) continue;
      std::size_t gain = 0;
      for (CellId k : cov.cells_of(c.id))
        if (!st.covered_cells[k]) ++gain;
      if (gain == 0) continue;
      options.push_back({gain, feasible_deployed_sources(inst, st, c.id).size(), c.id});
    }
    std::sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
      return std::tie(b.gain, b.sources, a.id) < std::tie(a.gain, a.sources, b.id);
    });
    bool placed = false;
    for (const auto& opt : options) {
      NetworkState trial = st;
      if (deploy(inst, trial, opt.id).ok()) {
        st = std::move(trial);
        covered += opt.gain;
        placed = true;
        break;
      }
    }
    if (!placed) break;
  }
  out.complete = covered >= target;
  return out;
}

// Deploys candidates in a uniformly random order until the target is met.
inline PlanResult random_plan(const Instance& inst, std::uint64_t seed) {
  const auto& s = inst.scenario();
  PlanResult out;
  out.algorithm = "random";
  out.state = inst.initial_state();
  auto& st = out.state;
  std::vector<NodeId> order;
  for (const auto& c : s.candidates) order.push_back(c.id);
  std::mt19937_64 rng(seed);
  rng::shuffle(order, rng);
  const std::size_t target = inst.coverage_target_cells();
  std::size_t covered = coverage_indicators(inst, st).covered_count;
  for (NodeId v : order) {
    if (covered >= target) break;
    deploy(inst, st, v);
    covered = coverage_indicators(inst, st).covered_count;
  }
  out.complete = covered >= target;
  return out;
}

namespace detail {

// Inbound source choices per node: every m-subset (or the full set when
// fewer exist) of its feasible deployed sources.
inline std::vector<std::vector<NodeId>> source_subsets(const std::vector<NodeId>& sources,
                                                       std::size_t m) {
  std::vector<std::vector<NodeId>> out;
  const std::size_t k = std::min(m, sources.size());
  std::vector<bool> pick(sources.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<NodeId> subset;
    for (std::size_t i = 0; i < sources.size(); ++i)
      if (pick[i]) subset.push_back(sources[i]);
    out.push_back(std::move(subset));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

inline bool finalize_and_check(const Instance& inst, NetworkState& st) {
  st.flows_mbps = allocate_flows(inst, st).flows_mbps;
  refresh_coverage(inst, st);
  return check_all(inst, st).overall_feasible;
}

// Tries increasingly expensive link activations for one fixed node subset.
inline std::optional<NetworkState> activate_subset(const Instance& inst,
                                                   const std::vector<NodeId>& subset,
                                                   std::size_t exhaustive_node_limit,
                                                   std::size_t exhaustive_budget) {
  const auto& s = inst.scenario();

  // 1. The incremental policy used by the other planners, in id order.
  NetworkState st = inst.initial_state();
  for (NodeId v : subset) deploy(inst, st, v);
  if (check_all(inst, st).overall_feasible) return st;

  // 2. Every feasible link among the deployed nodes.
  NetworkState dense = inst.initial_state();
  for (NodeId v : subset) dense.deployed[v] = true;
  for (NodeId q : subset)
    for (NodeId p : feasible_deployed_sources(inst, dense, q)) dense.active_links.insert({p, q});
  if (finalize_and_check(inst, dense)) return dense;

  // 3. Exhaustive inbound-source choices for small subsets.
  if (subset.size() > exhaustive_node_limit) return std::nullopt;
  const auto m = static_cast<std::size_t>(s.policy.m);
  std::vector<std::vector<std::vector<NodeId>>> choices;
  std::size_t combos = 1;
  for (NodeId q : subset) {
    choices.push_back(source_subsets(feasible_deployed_sources(inst, dense, q), m));
    combos = choices.back().size() > exhaustive_budget / std::max<std::size_t>(combos, 1)
                 ? exhaustive_budget + 1
                 : combos * choices.back().size();
  }
  if (combos > exhaustive_budget) return std::nullopt;
  std::vector<std::size_t> idx(subset.size(), 0);
  while (true) {
    NetworkState trial = inst.initial_state();
    for (NodeId v : subset) trial.deployed[v] = true;
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (NodeId p : choices[i][idx[i]]) trial.active_links.insert({p, subset[i]});
    if (finalize_and_check(inst, trial)) return trial;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }
  return std::nullopt;
}

}  // namespace detail

struct ExactOptions {
  std::size_t max_candidates = 15;
  std::size_t exhaustive_node_limit = 10;
  std::size_t exhaustive_budget = 20000;
};

// Minimum-cardinality deployment passing check_all(). Subsets are visited by
// size, then lexicographically by candidate id; sizes whose best-case cell
// union cannot reach the target are skipped. Returns nullopt when no subset
// is feasible.
inline std::optional<PlanResult> exact_plan(const Instance& inst, const ExactOptions& opt = {}) {
  const auto& s = inst.scenario();
  const auto& cov = inst.coverage();
  const std::size_t c = s.candidates.size();
  if (c > opt.max_candidates)
    throw InstanceTooLarge("exact_plan: " + std::to_string(c) + " candidates exceeds limit of " +
                           std::to_string(opt.max_candidates));
  const std::size_t target = inst.coverage_target_cells();
  const auto base = inst.initial_state();
  const auto base_cov = coverage_indicators(inst, base);

  std::vector<std::size_t> gains;
  for (const auto& cand : s.candidates) {
    std::size_t g = 0;
    for (CellId k : cov.cells_of(cand.id))
      if (!base_cov.covered[k]) ++g;
    gains.push_back(g);
  }
  std::vector<std::size_t> sorted_gains = gains;
  std::sort(sorted_gains.rbegin(), sorted_gains.rend());

  std::size_t bound = base_cov.covered_count;
  for (std::size_t size = 0; size <= c; ++size) {
    if (size > 0) bound += sorted_gains[size - 1];
    if (bound < target) continue;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      std::vector<bool> covered = base_cov.covered;
      std::vector<NodeId> subset;
      for (std::size_t i : pick) {
        subset.push_back(s.candidates[i].id);
        for (CellId k : cov.cells_of(s.candidates[i].id)) covered[k] = true;
      }
      const auto n_cov = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true));
      if (n_cov >= target) {
        auto st = detail::activate_subset(inst, subset, opt.exhaustive_node_limit,
                                          opt.exhaustive_budget);
        if (st) return PlanResult{std::move(*st), true, "exact"};
      }
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == c - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace iabplan
