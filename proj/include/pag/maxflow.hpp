// Copyright (c) pag contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <queue>
#include <stdexcept>
#include <vector>

namespace pag {

struct FlowArc {
  int from = -1;
  int to = -1;
  double capacity = 0.0;
  double flow = 0.0;
};

/// A source/sink-augmented capacity network. Node 0 is always the source and
/// node node_count-1 the sink; `country_of_node` maps interior nodes back to
/// country labels (-1 for source and sink). The arc index lists record which
/// arcs play which role in the bipartite reduction; `middle_arcs` is parallel
/// to the adversary edge ordering.
struct FlowNetwork {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  std::vector<FlowArc> arcs;
  std::vector<int> country_of_node;
  std::vector<int> source_arcs;
  std::vector<int> middle_arcs;
  std::vector<int> sink_arcs;

  int add_arc(int from, int to, double capacity) {
    arcs.push_back({from, to, capacity, 0.0});
    return static_cast<int>(arcs.size()) - 1;
  }
};

/// Maximum s-t flow by shortest augmenting paths (BFS on the residual
/// graph). Fills `net.arcs[*].flow` and returns the flow value. Uses only
/// additions, subtractions and minima, so integral capacities produce an
/// exactly integral flow. Termination is structural: the number of
/// augmentations is polynomial in the network size regardless of capacities.
inline double max_flow(FlowNetwork& net) {
  const int n = net.node_count;
  if (n == 0) return 0.0;
  if (net.source < 0 || net.source >= n || net.sink < 0 || net.sink >= n) {
    throw std::invalid_argument("flow network source/sink out of range");
  }

  // Residual representation: forward arc 2k, reverse arc 2k+1.
  const int m = static_cast<int>(net.arcs.size());
  std::vector<int> head(2 * m);
  std::vector<double> residual(2 * m);
  std::vector<std::vector<int>> out(n);
  for (int k = 0; k < m; ++k) {
    const FlowArc& a = net.arcs[k];
    head[2 * k] = a.to;
    head[2 * k + 1] = a.from;
    residual[2 * k] = a.capacity;
    residual[2 * k + 1] = 0.0;
    out[a.from].push_back(2 * k);
    out[a.to].push_back(2 * k + 1);
  }

  double value = 0.0;
  std::vector<int> parent_arc(n);
  while (true) {
    std::fill(parent_arc.begin(), parent_arc.end(), -1);
    parent_arc[net.source] = -2;
    std::queue<int> queue;
    queue.push(net.source);
    while (!queue.empty() && parent_arc[net.sink] == -1) {
      const int v = queue.front();
      queue.pop();
      for (int e : out[v]) {
        if (residual[e] > 0.0 && parent_arc[head[e]] == -1) {
          parent_arc[head[e]] = e;
          queue.push(head[e]);
        }
      }
    }
    if (parent_arc[net.sink] == -1) break;

    double bottleneck = -1.0;
    for (int v = net.sink; v != net.source;) {
      const int e = parent_arc[v];
      if (bottleneck < 0.0 || residual[e] < bottleneck) bottleneck = residual[e];
      v = head[e ^ 1];
    }
    for (int v = net.sink; v != net.source;) {
      const int e = parent_arc[v];
      residual[e] -= bottleneck;
      residual[e ^ 1] += bottleneck;
      v = head[e ^ 1];
    }
    value += bottleneck;
  }

  for (int k = 0; k < m; ++k) {
    net.arcs[k].flow = net.arcs[k].capacity - residual[2 * k];
  }
  return value;
}

}  // namespace pag
