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

// Backhaul link digraph, deployment state and the attributed graph handed to
// learning agents.

#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "iabplan/propagation.hpp"
#include "iabplan/scenario.hpp"

namespace iabplan {

// Directed backhaul link src -> dst.
struct Link {
  NodeId src = 0;
  NodeId dst = 0;

  friend auto operator<=>(const Link&, const Link&) = default;
};

struct NetworkState {
  std::vector<bool> deployed;         // alpha_v, donors always true
  std::set<Link> active_links;        // Y_pq = 1
  std::map<Link, double> flows_mbps;  // R_pq
  std::vector<bool> covered_cells;    // U_k as claimed by the producer

  static NetworkState initial(const Scenario& s) {
    NetworkState st;
    st.deployed.assign(s.node_count(), false);
    for (const auto& d : s.donors) st.deployed[d.id] = true;
    st.covered_cells.assign(s.cells.size(), false);
    return st;
  }

  bool is_deployed(NodeId v) const { return v < deployed.size() && deployed[v]; }

  friend bool operator==(const NetworkState&, const NetworkState&) = default;
};

inline std::vector<NodeId> deployed_candidates(const Scenario& s,
                                               const NetworkState& st) {
  std::vector<NodeId> out;
  for (const auto& c : s.candidates)
    if (st.is_deployed(c.id)) out.push_back(c.id);
  return out;
}

// N_v: active links terminating at `node`.
inline std::size_t inbound_degree(const NetworkState& st, NodeId node) {
  if (node >= st.deployed.size())
    throw std::out_of_range("inbound_degree: unknown node " + std::to_string(node));
  std::size_t n = 0;
  for (const auto& l : st.active_links)
    if (l.dst == node) ++n;
  return n;
}

inline std::vector<std::size_t> inbound_degrees(std::size_t node_count,
                                                const NetworkState& st) {
  std::vector<std::size_t> deg(node_count, 0);
  for (const auto& l : st.active_links)
    if (l.dst < node_count) ++deg[l.dst];
  return deg;
}

struct CandidateEdge {
  Link link;
  double capacity_mbps = 0.0;
};

// Scenario-level link table. L_pq is the SNR feasibility of the steered
// backhaul budget; `graph_edges` is the degree-capped subset that forms the
// encoder graph.
class Topology {
 public:
  explicit Topology(const Scenario& s) : n_(s.node_count()) {
    feasible_.assign(n_ * n_, 0);
    capacity_.assign(n_ * n_, 0.0);
    for (NodeId p = 0; p < n_; ++p) {
      for (NodeId q = s.donors.size(); q < n_; ++q) {
        if (p == q) continue;
        const double d = distance_m(s.position(p), s.position(q));
        if (!(d > 0.0)) continue;  // co-located sites cannot link
        const auto b = propagation::evaluate_distance(d, propagation::LinkKind::kBackhaul, s.radio);
        if (!b.feasible) continue;
        feasible_[p * n_ + q] = 1;
        capacity_[p * n_ + q] = b.capacity_mbps;
        c_max_ = std::max(c_max_, b.capacity_mbps);
        ++feasible_count_;
      }
    }
    build_capped_edges(s);
  }

  std::size_t node_count() const { return n_; }

  bool feasible(NodeId p, NodeId q) const {
    return p < n_ && q < n_ && feasible_[p * n_ + q] != 0;
  }
  bool feasible(const Link& l) const { return feasible(l.src, l.dst); }

  double capacity_mbps(NodeId p, NodeId q) const {
    return feasible(p, q) ? capacity_[p * n_ + q] : 0.0;
  }
  double capacity_mbps(const Link& l) const { return capacity_mbps(l.src, l.dst); }

  // Strongest feasible link over the whole scenario.
  double c_max_mbps() const { return c_max_; }
  std::size_t feasible_link_count() const { return feasible_count_; }

  // Sorted by (src, dst).
  const std::vector<CandidateEdge>& graph_edges() const { return edges_; }

  bool is_graph_edge(const Link& l) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), l,
                               [](const CandidateEdge& e, const Link& x) { return e.link < x; });
    return it != edges_.end() && it->link == l;
  }

 private:
  void build_capped_edges(const Scenario& s) {
    const std::size_t cap = s.backhaul_degree_cap;
    std::vector<std::pair<double, NodeId>> targets;
    for (NodeId p = 0; p < n_; ++p) {
      targets.clear();
      for (NodeId q = s.donors.size(); q < n_; ++q)
        if (feasible(p, q)) targets.emplace_back(distance_m(s.position(p), s.position(q)), q);
      const std::size_t keep = std::min(cap, targets.size());
      std::partial_sort(targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(keep),
                        targets.end());
      std::vector<NodeId> chosen;
      for (std::size_t i = 0; i < keep; ++i) chosen.push_back(targets[i].second);
      std::sort(chosen.begin(), chosen.end());
      for (NodeId q : chosen) edges_.push_back({{p, q}, capacity_mbps(p, q)});
    }
  }

  std::size_t n_ = 0;
  std::vector<std::uint8_t> feasible_;
  std::vector<double> capacity_;
  double c_max_ = 0.0;
  std::size_t feasible_count_ = 0;
  std::vector<CandidateEdge> edges_;
};

// Degree-capped feasible edges with capacities.
inline std::vector<CandidateEdge> feasible_links(const Scenario& s) {
  return Topology(s).graph_edges();
}

struct GraphEdge {
  Link link;
  // [C_pq / C_max, R_pq / C_pq, L_pq]
  std::array<double, 3> features{};
};

struct AttributedGraph {
  // Per node: [alpha_v, A_v / A_max, N_v / m, is_donor]
  std::vector<std::array<double, 4>> node_features;
  std::vector<GraphEdge> edges;
  // [theta_cov, m, beta, R_o]
  std::array<double, 4> global_features{};
  // Index 0 is the stop action; index j >= 1 is "deploy node j".
  std::vector<std::uint8_t> action_mask;

  friend bool operator==(const AttributedGraph& a, const AttributedGraph& b) {
    if (a.node_features != b.node_features || a.global_features != b.global_features ||
        a.action_mask != b.action_mask || a.edges.size() != b.edges.size())
      return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i)
      if (a.edges[i].link != b.edges[i].link || a.edges[i].features != b.edges[i].features)
        return false;
    return true;
  }
};

// Edge list = degree-capped feasible edges plus any active link outside the
// cap, so utilisation of every carrying link is visible.
inline AttributedGraph build_graph(const Scenario& s, const Topology& topo,
                                   const NetworkState& st) {
  const std::size_t n = s.node_count();
  if (st.deployed.size() != n) throw std::invalid_argument("build_graph: state size mismatch");
  AttributedGraph g;

  const double a_max = s.max_demand_mbps();
  const double m = static_cast<double>(s.policy.m);
  const auto degree = inbound_degrees(n, st);
  g.node_features.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    g.node_features[v] = {st.deployed[v] ? 1.0 : 0.0,
                          a_max > 0.0 ? s.demand_mbps(v) / a_max : 0.0,
                          static_cast<double>(degree[v]) / m,
                          s.is_donor(v) ? 1.0 : 0.0};
  }

  const auto& base = topo.graph_edges();
  std::vector<Link> extra;
  for (const auto& l : st.active_links)
    if (!topo.is_graph_edge(l)) extra.push_back(l);
  g.edges.reserve(base.size() + extra.size());
  auto bi = base.begin();
  auto ei = extra.begin();
  auto push = [&](const Link& l) {
    const double c = topo.capacity_mbps(l);
    if (!(c > 0.0))
      throw std::logic_error("build_graph: listed edge has zero capacity");
    g.edges.push_back({l, {c / topo.c_max_mbps(), 0.0, 1.0}});
  };
  while (bi != base.end() || ei != extra.end()) {
    if (ei == extra.end() || (bi != base.end() && bi->link < *ei)) {
      push(bi->link);
      ++bi;
    } else {
      push(*ei);
      ++ei;
    }
  }
  for (const auto& [l, r] : st.flows_mbps) {
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), l,
                               [](const GraphEdge& e, const Link& x) { return e.link < x; });
    if (it != g.edges.end() && it->link == l)
      it->features[1] = r / topo.capacity_mbps(l);
  }

  g.global_features = {s.policy.theta_cov, m, s.policy.beta, s.policy.overhead};

  g.action_mask.assign(n, 0);
  if (n > 0) g.action_mask[0] = 1;
  for (const auto& c : s.candidates)
    if (!st.deployed[c.id]) g.action_mask[c.id] = 1;
  return g;
}

}  // namespace iabplan
