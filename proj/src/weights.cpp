#include "coarse/weights.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "coarse/errors.hpp"

namespace coarse {

WeightedDistances vertex_weighted_distance(const Graph& g, std::span<const double> weights,
                                           std::span<const Vertex> sources,
                                           const std::vector<char>& allowed) {
  int n = g.num_vertices();
  require(static_cast<int>(weights.size()) == n, "weight vector size mismatch");
  for (double w : weights) require(w >= 0.0, "vertex weights must be non-negative");
  check_vertices(g, sources, "source set");
  auto ok = [&](Vertex v) { return allowed.empty() || allowed[v]; };
  WeightedDistances wd{std::vector<double>(static_cast<std::size_t>(n), kInfiniteDistance),
                       std::vector<Vertex>(static_cast<std::size_t>(n), -1)};
  using Item = std::pair<double, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (Vertex s : sources)
    if (ok(s) && weights[s] < wd.dist[s]) {
      wd.dist[s] = weights[s];
      pq.emplace(weights[s], s);
    }
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (Vertex w : g.neighbors(v)) {
      if (!ok(w) || done[w]) continue;
      double nd = d + weights[w];
      if (nd < wd.dist[w]) {
        wd.dist[w] = nd;
        wd.pred[w] = v;
        pq.emplace(nd, w);
      }
    }
  }
  return wd;
}

Path trace_path(const WeightedDistances& wd, Vertex target) {
  if (wd.dist[target] == kInfiniteDistance) return {};
  Path p{target};
  while (wd.pred[p.back()] >= 0) p.push_back(wd.pred[p.back()]);
  std::reverse(p.begin(), p.end());
  return p;
}

std::vector<double> vertex_mass(const LayeredFamily& fam, std::span<const double> x) {
  require(static_cast<int>(x.size()) == fam.num_sets(), "set weight vector size mismatch");
  std::vector<double> xv(static_cast<std::size_t>(fam.num_vertices()), 0.0);
  for (Vertex v = 0; v < fam.num_vertices(); ++v)
    for (int i : fam.sets_containing(v)) xv[v] += x[i];
  return xv;
}

double measure(const LayeredFamily& fam, std::span<const double> x, std::span<const Vertex> u) {
  double s = 0.0;
  for (int i : sets_hit(fam, u)) s += x[i];
  return s;
}

}  // namespace coarse
