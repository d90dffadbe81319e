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

// Random backhaul-link failure injection and coverage retention.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "iabplan/constraints.hpp"
#include "iabplan/instance.hpp"
#include "iabplan/netgraph.hpp"
#include "iabplan/rng.hpp"

namespace iabplan {

// Active links grouped into physical links: p->q and q->p share one radio
// path and fail together. Sorted by (min id, max id).
inline std::vector<std::pair<NodeId, NodeId>> physical_links(const NetworkState& st) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const auto& l : st.active_links)
    pairs.insert({std::min(l.src, l.dst), std::max(l.src, l.dst)});
  return {pairs.begin(), pairs.end()};
}

// Fails floor(fraction * #physical links) distinct physical links chosen
// uniformly without replacement. Returns every affected directed link.
inline std::set<Link> inject_failures(const NetworkState& st, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("inject_failures: fraction must lie in [0, 1]");
  auto links = physical_links(st);
  const auto count = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(links.size()) + 1e-9));
  std::mt19937_64 gen(seed);
  rng::partial_shuffle(links, count, gen);
  std::set<Link> failed;
  for (std::size_t i = 0; i < count; ++i) {
    const auto [a, b] = links[i];
    if (st.active_links.contains({a, b})) failed.insert({a, b});
    if (st.active_links.contains({b, a})) failed.insert({b, a});
  }
  return failed;
}

// Deployed nodes still reachable from a donor over surviving active links.
// Donors always survive.
inline std::vector<bool> surviving_nodes(const Instance& inst, const NetworkState& st,
                                         const std::set<Link>& failed) {
  const auto& s = inst.scenario();
  const std::size_t n = s.node_count();
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& l : st.active_links)
    if (!failed.contains(l) && l.src < n && l.dst < n && st.is_deployed(l.src) &&
        st.is_deployed(l.dst))
      adj[l.src].push_back(l.dst);
  std::vector<bool> alive(n, false);
  std::deque<NodeId> queue;
  for (const auto& d : s.donors) {
    alive[d.id] = true;
    queue.push_back(d.id);
  }
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[u])
      if (!alive[v]) {
        alive[v] = true;
        queue.push_back(v);
      }
  }
  return alive;
}

inline std::size_t covered_by(const Instance& inst, const std::vector<bool>& nodes) {
  std::vector<bool> covered(inst.scenario().cells.size(), false);
  for (NodeId v = 0; v < nodes.size(); ++v)
    if (nodes[v])
      for (CellId k : inst.coverage().cells_of(v)) covered[k] = true;
  return static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true));
}

// Cells covered by donors and surviving nodes over cells covered before the
// failure. Overlap is handled by recounting over survivors.
inline double post_failure_retention(const Instance& inst, const NetworkState& st,
                                     const std::set<Link>& failed) {
  std::vector<bool> before(st.deployed.begin(), st.deployed.end());
  const std::size_t base = covered_by(inst, before);
  if (base == 0) return 1.0;
  const std::size_t after = covered_by(inst, surviving_nodes(inst, st, failed));
  return static_cast<double>(after) / static_cast<double>(base);
}

struct FailureTrialStats {
  double failure_fraction = 0.0;
  std::size_t trials = 0;
  double retention_mean = 0.0;
  double retention_std = 0.0;  // population standard deviation
  double retention_min = 0.0;
  std::vector<double> retentions;
};

inline std::vector<FailureTrialStats> run_trials(const Instance& inst, const NetworkState& st,
                                                 const std::vector<double>& fractions,
                                                 std::size_t n_trials, std::uint64_t master_seed) {
  if (n_trials < 1) throw std::invalid_argument("run_trials: n_trials must be >= 1");
  std::vector<FailureTrialStats> out;
  for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
    FailureTrialStats stats;
    stats.failure_fraction = fractions[fi];
    stats.trials = n_trials;
    for (std::size_t t = 0; t < n_trials; ++t) {
      const auto seed = rng::derive_seed(master_seed, {fi, t});
      stats.retentions.push_back(
          post_failure_retention(inst, st, inject_failures(st, fractions[fi], seed)));
    }
    double sum = 0.0;
    for (double r : stats.retentions) sum += r;
    stats.retention_mean = sum / static_cast<double>(n_trials);
    double var = 0.0;
    for (double r : stats.retentions) var += (r - stats.retention_mean) * (r - stats.retention_mean);
    stats.retention_std = std::sqrt(var / static_cast<double>(n_trials));
    stats.retention_min = *std::min_element(stats.retentions.begin(), stats.retentions.end());
    out.push_back(std::move(stats));
  }
  return out;
}

}  // namespace iabplan
