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

// Validation of a deployment against the coverage, activation, resilience,
// capacity and flow-conservation constraints, plus the min-hop flow
// allocator used to produce routing certificates.

#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "iabplan/instance.hpp"
#include "iabplan/netgraph.hpp"

namespace iabplan {

// Slack for floating-point flow comparisons, relative to the bound.
inline constexpr double kFlowRelTolerance = 1e-9;

inline bool leq_with_tolerance(double lhs, double rhs) {
  return lhs <= rhs + kFlowRelTolerance * std::max(1.0, std::abs(rhs));
}

struct CoverageResult {
  std::vector<bool> covered;  // U_k
  std::size_t covered_count = 0;
  double fraction = 0.0;
};

inline CoverageResult coverage_indicators(const Instance& inst, const NetworkState& st) {
  const auto& s = inst.scenario();
  CoverageResult r;
  r.covered.assign(s.cells.size(), false);
  for (NodeId v = 0; v < s.node_count(); ++v) {
    if (!st.is_deployed(v)) continue;
    for (CellId k : inst.coverage().cells_of(v)) r.covered[k] = true;
  }
  r.covered_count = static_cast<std::size_t>(std::count(r.covered.begin(), r.covered.end(), true));
  r.fraction = s.cells.empty() ? 0.0
                               : static_cast<double>(r.covered_count) / static_cast<double>(s.cells.size());
  return r;
}

// Deployed candidates with fewer than m active inbound links. Donors are
// never vulnerable.
inline std::vector<NodeId> resilience_check(const Scenario& s, const NetworkState& st, int m) {
  const auto deg = inbound_degrees(s.node_count(), st);
  std::vector<NodeId> out;
  for (const auto& c : s.candidates)
    if (st.is_deployed(c.id) && deg[c.id] < static_cast<std::size_t>(m)) out.push_back(c.id);
  return out;
}

inline std::vector<NodeId> resilience_check(const Instance& inst, const NetworkState& st) {
  return resilience_check(inst.scenario(), st, inst.scenario().policy.m);
}

struct FlowAllocation {
  std::map<Link, double> flows_mbps;
  std::vector<NodeId> parent;  // routing-forest parent, npos for roots/unreached
  std::vector<std::size_t> hops;
  std::vector<NodeId> unreachable;             // deployed, no donor path
  std::vector<Link> link_capacity_violations;  // R > (1 - beta) C
  std::vector<NodeId> donor_capacity_violations;

  static constexpr NodeId npos = std::numeric_limits<NodeId>::max();

  bool ok() const {
    return unreachable.empty() && link_capacity_violations.empty() &&
           donor_capacity_violations.empty();
  }
};

// Min-hop routing forest over active links, rooted at the donors. Each node
// picks, among parents one hop closer to a donor, the highest-capacity link
// (lower node id on ties). Loads are aggregated leaf-to-root with the
// overhead applied at every hop: R_parent->j = R_o * (A_j + sum of child
// flows). Unreachable nodes are reported and carry no flow.
inline FlowAllocation allocate_flows(const Instance& inst, const NetworkState& st) {
  const auto& s = inst.scenario();
  const auto& topo = inst.topology();
  const std::size_t n = s.node_count();
  const std::size_t inf = std::numeric_limits<std::size_t>::max();

  std::vector<std::vector<NodeId>> out_adj(n);
  std::vector<std::vector<NodeId>> in_adj(n);
  for (const auto& l : st.active_links) {
    if (l.src >= n || l.dst >= n) continue;
    if (!st.is_deployed(l.src) || !st.is_deployed(l.dst)) continue;
    out_adj[l.src].push_back(l.dst);
    in_adj[l.dst].push_back(l.src);
  }

  FlowAllocation fa;
  fa.parent.assign(n, FlowAllocation::npos);
  fa.hops.assign(n, inf);
  std::deque<NodeId> queue;
  for (const auto& d : s.donors) {
    fa.hops[d.id] = 0;
    queue.push_back(d.id);
  }
  std::vector<NodeId> order;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (NodeId v : out_adj[u]) {
      if (fa.hops[v] != inf || s.is_donor(v)) continue;
      fa.hops[v] = fa.hops[u] + 1;
      queue.push_back(v);
    }
  }
  for (NodeId v : order) {
    if (s.is_donor(v)) continue;
    NodeId best = FlowAllocation::npos;
    double best_c = -1.0;
    for (NodeId p : in_adj[v]) {
      if (fa.hops[p] == inf || fa.hops[p] + 1 != fa.hops[v]) continue;
      const double c = topo.capacity_mbps(p, v);
      if (c > best_c || (c == best_c && p < best)) {
        best = p;
        best_c = c;
      }
    }
    fa.parent[v] = best;
  }
  for (const auto& c : s.candidates)
    if (st.is_deployed(c.id) && fa.hops[c.id] == inf) fa.unreachable.push_back(c.id);

  // Deepest nodes first so every child's flow is final before its parent's.
  std::vector<double> outbound(n, 0.0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (s.is_donor(v)) continue;
    const double need = s.policy.overhead * (s.demand_mbps(v) + outbound[v]);
    const NodeId p = fa.parent[v];
    fa.flows_mbps[{p, v}] = need;
    outbound[p] += need;
  }

  for (const auto& [l, r] : fa.flows_mbps)
    if (!leq_with_tolerance(r, (1.0 - s.policy.beta) * topo.capacity_mbps(l)))
      fa.link_capacity_violations.push_back(l);
  for (const auto& d : s.donors)
    if (!leq_with_tolerance(outbound[d.id] + s.policy.overhead * d.demand_mbps, d.fiber_mbps))
      fa.donor_capacity_violations.push_back(d.id);
  return fa;
}

struct ConstraintReport {
  double coverage_fraction = 0.0;
  std::size_t covered_cells = 0;
  std::size_t required_cells = 0;
  bool coverage_ok = false;
  std::vector<bool> cell_coverage;                // recomputed U_k
  std::vector<CellId> coverage_claim_violations;  // claimed U_k = 1 with no coverer
  std::vector<Link> link_activation_violations;   // Y_pq > L_pq alpha_p alpha_q
  std::vector<NodeId> vulnerable_nodes;
  std::vector<Link> link_capacity_violations;
  std::vector<NodeId> donor_capacity_violations;
  std::vector<NodeId> flow_conservation_violations;
  std::size_t objective_value = 0;  // deployed candidates
  bool overall_feasible = false;
};

// Checks the state exactly as given, flows included. Routing is not redone
// here; use allocate_flows() to produce flows first.
inline ConstraintReport check_all(const Instance& inst, const NetworkState& st) {
  const auto& s = inst.scenario();
  const auto& topo = inst.topology();
  const std::size_t n = s.node_count();
  const auto& pol = s.policy;
  ConstraintReport r;

  const auto cov = coverage_indicators(inst, st);
  r.cell_coverage = cov.covered;
  r.covered_cells = cov.covered_count;
  r.coverage_fraction = cov.fraction;
  r.required_cells = inst.coverage_target_cells();
  r.coverage_ok = static_cast<double>(cov.covered_count) >=
                  pol.theta_cov * static_cast<double>(s.cells.size()) - 1e-9;
  for (CellId k = 0; k < s.cells.size() && k < st.covered_cells.size(); ++k)
    if (st.covered_cells[k] && !cov.covered[k]) r.coverage_claim_violations.push_back(k);

  for (const auto& l : st.active_links) {
    const bool ok = l.src < n && l.dst < n && l.src != l.dst && s.is_candidate(l.dst) &&
                    topo.feasible(l) && st.is_deployed(l.src) && st.is_deployed(l.dst);
    if (!ok) r.link_activation_violations.push_back(l);
  }

  r.vulnerable_nodes = resilience_check(s, st, pol.m);

  std::vector<double> inbound(n, 0.0);
  std::vector<double> outbound(n, 0.0);  // to candidates over active links
  for (const auto& [l, flow] : st.flows_mbps) {
    if (l.src >= n || l.dst >= n || l.src == l.dst) continue;
    const bool active = st.active_links.contains(l);
    // R_pq * Y_pq: flow on an inactive link counts for nothing but still
    // breaks the capacity bound.
    const double cap = active ? (1.0 - pol.beta) * topo.capacity_mbps(l) : 0.0;
    if (s.is_candidate(l.dst) && !leq_with_tolerance(flow, cap))
      r.link_capacity_violations.push_back(l);
    if (!active) continue;
    inbound[l.dst] += flow;
    if (s.is_candidate(l.dst)) outbound[l.src] += flow;
  }

  for (const auto& d : s.donors)
    if (!leq_with_tolerance(outbound[d.id] + pol.overhead * d.demand_mbps, d.fiber_mbps))
      r.donor_capacity_violations.push_back(d.id);

  for (const auto& c : s.candidates) {
    const double alpha = st.is_deployed(c.id) ? 1.0 : 0.0;
    const double need = pol.overhead * (c.demand_mbps * alpha + outbound[c.id]);
    if (!leq_with_tolerance(need, inbound[c.id])) r.flow_conservation_violations.push_back(c.id);
  }

  r.objective_value = deployed_candidates(s, st).size();
  r.overall_feasible = r.coverage_ok && r.coverage_claim_violations.empty() &&
                       r.link_activation_violations.empty() && r.vulnerable_nodes.empty() &&
                       r.link_capacity_violations.empty() && r.donor_capacity_violations.empty() &&
                       r.flow_conservation_violations.empty();
  return r;
}

}  // namespace iabplan
