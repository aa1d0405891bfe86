#include "coarse/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace coarse {

MaxFlow::MaxFlow(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

int MaxFlow::add_edge(int from, int to, int cap) {
  int id = static_cast<int>(edges_.size());
  edges_.push_back({to, cap, 0});
  edges_.push_back({from, 0, 0});
  adj_[from].push_back(id);
  adj_[to].push_back(id + 1);
  return id;
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(adj_.size(), -1);
  level_[s] = 0;
  std::queue<int> q;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int id : adj_[v]) {
      const auto& e = edges_[id];
      if (e.cap - e.flow > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[t] >= 0;
}

int MaxFlow::dfs(int v, int t, int pushed) {
  if (v == t || pushed == 0) return pushed;
  for (int& i = it_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
    int id = adj_[v][i];
    auto& e = edges_[id];
    if (level_[e.to] != level_[v] + 1 || e.cap - e.flow <= 0) continue;
    int got = dfs(e.to, t, std::min(pushed, e.cap - e.flow));
    if (got > 0) {
      e.flow += got;
      edges_[id ^ 1].flow -= got;
      return got;
    }
  }
  return 0;
}

int MaxFlow::run(int s, int t, int limit) {
  int total = 0;
  while (total < limit && bfs(s, t)) {
    it_.assign(adj_.size(), 0);
    while (total < limit) {
      int got = dfs(s, t, limit - total);
      if (got == 0) break;
      total += got;
    }
  }
  return total;
}

std::vector<char> MaxFlow::residual_reachable(int s) const {
  std::vector<char> seen(adj_.size(), 0);
  std::vector<int> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int id : adj_[v]) {
      const auto& e = edges_[id];
      if (e.cap - e.flow > 0 && !seen[e.to]) {
        seen[e.to] = 1;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

}  // namespace coarse
