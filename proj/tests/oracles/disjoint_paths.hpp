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

// Unit-capacity max flow (Edmonds-Karp) from a super source joined to every
// donor. The value at node t is the number of link-disjoint donor paths.

#pragma once

#include <deque>
#include <limits>
#include <set>
#include <vector>

#include "iabplan/netgraph.hpp"

namespace oracle {

inline std::size_t disjoint_donor_paths(std::size_t node_count, std::size_t donor_count,
                                        const std::set<iabplan::Link>& links, std::size_t target,
                                        std::size_t stop_at = std::numeric_limits<std::size_t>::max()) {
  const std::size_t src = node_count;  // super source
  const std::size_t n = node_count + 1;
  std::vector<std::vector<int>> cap(n, std::vector<int>(n, 0));
  for (std::size_t d = 0; d < donor_count; ++d) cap[src][d] = 1 << 20;
  for (const auto& l : links) cap[l.src][l.dst] += 1;

  std::size_t flow = 0;
  while (flow < stop_at) {
    std::vector<std::size_t> prev(n, n);
    prev[src] = src;
    std::deque<std::size_t> q{src};
    while (!q.empty() && prev[target] == n) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v = 0; v < n; ++v)
        if (prev[v] == n && cap[u][v] > 0) {
          prev[v] = u;
          q.push_back(v);
        }
    }
    if (prev[target] == n) break;
    for (std::size_t v = target; v != src; v = prev[v]) {
      --cap[prev[v]][v];
      ++cap[v][prev[v]];
    }
    ++flow;
  }
  return flow;
}

}  // namespace oracle
