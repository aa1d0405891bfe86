#include "coarse/generators.hpp"

#include <algorithm>
#include <random>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void add_path(std::vector<Edge>& edges, Vertex from, Vertex first, int count) {
  Vertex prev = from;
  for (int i = 0; i < count; ++i) {
    edges.emplace_back(prev, first + i);
    prev = first + i;
  }
}

}  // namespace

Graph grid_graph(int rows, int cols) {
  require(rows >= 1 && cols >= 1, "grid dimensions must be positive");
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      Vertex v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  return Graph::from_edges(rows * cols, edges);
}

Graph path_graph(int n) {
  require(n >= 1, "path needs a vertex");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(int n) {
  require(n >= 3, "cycle needs three vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

Graph star_graph(int leaves) {
  require(leaves >= 0, "negative leaf count");
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, edges);
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

Graph complete_bipartite(int p, int q) {
  std::vector<Edge> edges;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) edges.emplace_back(i, p + j);
  return Graph::from_edges(p + q, edges);
}

Graph gnp_graph(int n, double p, std::uint64_t seed) {
  require(n >= 0 && p >= 0.0 && p <= 1.0, "bad G(n,p) parameters");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit(rng) < p) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

Graph connected_gnp_graph(int n, double p, std::uint64_t seed) {
  require(n >= 1 && p >= 0.0 && p <= 1.0, "bad G(n,p) parameters");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    Vertex parent = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(i));
    edges.emplace_back(parent, i);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unit(rng) < p) edges.emplace_back(i, j);
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(n, edges);
}

Fixture theta_graph(int branches, int length) {
  require(branches >= 1 && length >= 1, "theta needs a branch of positive length");
  std::vector<Edge> edges;
  int n = 2 + branches * length;
  Vertex s = 0, t = 1;
  for (int b = 0; b < branches; ++b) {
    Vertex first = 2 + b * length;
    add_path(edges, s, first, length);
    edges.emplace_back(first + length - 1, t);
  }
  return {Graph::from_edges(n, edges), {s}, {t}};
}

Fixture corridor_graph(int width, int length) {
  require(width >= 1 && length >= 1, "corridor needs positive width and length");
  std::vector<Edge> edges;
  Fixture f;
  for (int w = 0; w < width; ++w) {
    Vertex first = w * (length + 1);
    add_path(edges, first, first + 1, length);
    f.a.push_back(first);
    f.b.push_back(first + length);
  }
  f.g = Graph::from_edges(width * (length + 1), edges);
  return f;
}

Fixture bottleneck_graph(int width, int length) {
  require(width >= 1 && length >= 1, "bottleneck needs positive width and length");
  std::vector<Edge> edges;
  Fixture f;
  Vertex hub = 0;
  Vertex next = 1;
  for (int side = 0; side < 2; ++side)
    for (int w = 0; w < width; ++w) {
      add_path(edges, hub, next, length);
      (side == 0 ? f.a : f.b).push_back(next + length - 1);
      next += length;
    }
  f.g = Graph::from_edges(next, edges);
  f.a = make_set(f.a);
  f.b = make_set(f.b);
  return f;
}

Fixture two_balls_graph(int radius, int gap) {
  require(radius >= 1 && gap >= 1, "two-balls needs positive radius and gap");
  std::vector<Edge> edges;
  Fixture f;
  Vertex next = 0;
  Vertex centers[2];
  for (int ball = 0; ball < 2; ++ball) {
    centers[ball] = next++;
    auto& side = ball == 0 ? f.a : f.b;
    side.push_back(centers[ball]);
    for (int leg = 0; leg < 3; ++leg) {
      add_path(edges, centers[ball], next, radius);
      for (int i = 0; i < radius; ++i) side.push_back(next + i);
      next += radius;
    }
  }
  add_path(edges, centers[0], next, gap - 1);
  edges.emplace_back(gap > 1 ? next + gap - 2 : centers[0], centers[1]);
  next += gap - 1;
  f.g = Graph::from_edges(next, edges);
  f.a = make_set(f.a);
  f.b = make_set(f.b);
  return f;
}

Fixture generate(const std::string& kind, int a, int b, double p, std::uint64_t seed) {
  if (kind == "grid") return {grid_graph(a, b), {}, {}};
  if (kind == "path") return {path_graph(a), {0}, {a - 1}};
  if (kind == "star") return {star_graph(a), {}, {}};
  if (kind == "cycle") return {cycle_graph(a), {}, {}};
  if (kind == "gnp") return {gnp_graph(a, p, seed), {}, {}};
  if (kind == "theta") return theta_graph(a, b);
  if (kind == "corridor") return corridor_graph(a, b);
  if (kind == "bottleneck") return bottleneck_graph(a, b);
  if (kind == "two-balls") return two_balls_graph(a, b);
  throw ValidationError("unknown generator kind '" + kind + "'");
}

}  // namespace coarse
