#pragma once

#include <vector>

namespace coarse {

/// Dinic's algorithm on a directed graph with integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  int add_edge(int from, int to, int cap);
  /// Augments until the flow reaches `limit` or no augmenting path is left.
  int run(int s, int t, int limit);
  int flow_on(int edge) const { return edges_[edge].flow; }
  int from(int edge) const { return edges_[edge ^ 1].to; }
  int to(int edge) const { return edges_[edge].to; }
  const std::vector<int>& out_edges(int node) const { return adj_[node]; }
  /// Nodes reachable from s in the residual graph.
  std::vector<char> residual_reachable(int s) const;

 private:
  struct Arc {
    int to, cap, flow;
  };
  std::vector<Arc> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_, it_;

  bool bfs(int s, int t);
  int dfs(int v, int t, int pushed);
};

}  // namespace coarse
