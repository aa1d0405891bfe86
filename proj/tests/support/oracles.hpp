#pragma once

// Independent reference implementations used only by the tests.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "coarse/graph.hpp"

namespace oracle {

using coarse::Edge;
using coarse::Graph;
using coarse::Path;
using coarse::Vertex;
using coarse::VertexSet;

/// min c.x  s.t.  G x >= h, x >= 0, by enumerating basic solutions. Tiny LPs only.
/// Returns +inf when infeasible.
inline double lp_min(const std::vector<double>& c, const std::vector<std::vector<double>>& G,
                     const std::vector<double>& h) {
  int nv = static_cast<int>(c.size());
  int nc = static_cast<int>(G.size());
  int total = nc + nv;
  auto row = [&](int i, int j) { return i < nc ? G[i][j] : (i - nc == j ? 1.0 : 0.0); };
  auto rhs = [&](int i) { return i < nc ? h[i] : 0.0; };
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(nv);
  std::vector<bool> sel(total, false);
  std::fill(sel.begin(), sel.begin() + nv, true);
  std::sort(sel.begin(), sel.end());
  do {
    int k = 0;
    for (int i = 0; i < total; ++i)
      if (sel[i]) pick[k++] = i;
    Eigen::MatrixXd m(nv, nv);
    Eigen::VectorXd b(nv);
    for (int r = 0; r < nv; ++r) {
      for (int j = 0; j < nv; ++j) m(r, j) = row(pick[r], j);
      b(r) = rhs(pick[r]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (lu.rank() < nv) continue;
    Eigen::VectorXd x = lu.solve(b);
    bool ok = true;
    for (int i = 0; i < total && ok; ++i) {
      double s = 0.0;
      for (int j = 0; j < nv; ++j) s += row(i, j) * x(j);
      if (s < rhs(i) - 1e-9) ok = false;
    }
    if (!ok) continue;
    double v = 0.0;
    for (int j = 0; j < nv; ++j) v += c[j] * x(j);
    best = std::min(best, v);
  } while (std::next_permutation(sel.begin(), sel.end()));
  return best;
}

inline bool reaches(const Graph& g, const VertexSet& a, const VertexSet& b, std::uint32_t removed) {
  int n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack;
  for (Vertex v : a)
    if (!(removed >> v & 1u) && !seen[v]) {
      seen[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v))
      if (!(removed >> w & 1u) && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  for (Vertex v : b)
    if (seen[v]) return true;
  return false;
}

/// Size of a smallest vertex set meeting every A-B path (n <= 20).
inline int min_separator_size(const Graph& g, const VertexSet& a, const VertexSet& b) {
  int n = g.num_vertices();
  int best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int sz = __builtin_popcount(mask);
    if (sz >= best) continue;
    if (!reaches(g, a, b, mask)) best = sz;
  }
  return best;
}

/// All simple paths from A to B, filtered to induced paths with interior avoiding A and B.
inline std::vector<Path> naive_induced_paths(const Graph& g, const VertexSet& a, const VertexSet& b) {
  int n = g.num_vertices();
  std::vector<char> in_a(n, 0), in_b(n, 0);
  for (Vertex v : a) in_a[v] = 1;
  for (Vertex v : b) in_b[v] = 1;
  std::vector<Path> all;
  Path cur;
  std::vector<char> on(n, 0);
  auto dfs = [&](auto&& self, Vertex v) -> void {
    cur.push_back(v);
    on[v] = 1;
    all.push_back(cur);
    for (Vertex w : g.neighbors(v))
      if (!on[w]) self(self, w);
    on[v] = 0;
    cur.pop_back();
  };
  for (Vertex s : a) dfs(dfs, s);
  std::vector<Path> out;
  for (auto& p : all) {
    if (!in_a[p.front()] || !in_b[p.back()]) continue;
    bool ok = true;
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
      if (in_a[p[i]] || in_b[p[i]]) ok = false;
    if (p.size() > 1 && (in_b[p.front()] || in_a[p.back()])) ok = false;
    for (std::size_t i = 0; i < p.size() && ok; ++i)
      for (std::size_t j = i + 2; j < p.size(); ++j)
        if (g.adjacent(p[i], p[j])) ok = false;
    if (ok) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Layered family by transitive closure of the arc relation. Returns, for each
/// vertex with no parent (in increasing order), the sorted set of its descendants.
inline std::vector<VertexSet> naive_family(const Graph& g, const std::vector<int>& part_of) {
  int n = g.num_vertices();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  std::vector<char> has_parent(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    reach[u][u] = 1;
    for (Vertex v : g.neighbors(u))
      if (part_of[u] > part_of[v]) {
        reach[u][v] = 1;
        has_parent[v] = 1;
      }
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;
  std::vector<VertexSet> out;
  for (Vertex w = 0; w < n; ++w) {
    if (has_parent[w]) continue;
    VertexSet s;
    for (Vertex v = 0; v < n; ++v)
      if (reach[w][v]) s.push_back(v);
    out.push_back(s);
  }
  return out;
}

inline std::vector<int> random_parts(int n, int parts, std::mt19937_64& rng) {
  std::vector<int> p(n);
  for (auto& x : p) x = static_cast<int>(rng() % static_cast<std::uint64_t>(parts));
  return p;
}

inline std::vector<VertexSet> parts_from_labels(const std::vector<int>& label) {
  int k = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<VertexSet> parts(k);
  for (Vertex v = 0; v < static_cast<Vertex>(label.size()); ++v) parts[label[v]].push_back(v);
  return parts;
}

inline VertexSet random_subset(int n, double p, std::mt19937_64& rng) {
  VertexSet s;
  for (Vertex v = 0; v < n; ++v)
    if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) s.push_back(v);
  return s;
}

/// Max independent set size in the graph where u,v conflict iff conflict(u,v).
template <class F>
int max_independent(const std::vector<Vertex>& items, F conflict) {
  int m = static_cast<int>(items.size());
  int best = 0;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int i) -> void {
    if (static_cast<int>(chosen.size()) + (m - i) <= best) return;
    if (i == m) {
      best = std::max(best, static_cast<int>(chosen.size()));
      return;
    }
    bool ok = true;
    for (int c : chosen)
      if (conflict(items[c], items[i])) ok = false;
    if (ok) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
    self(self, i + 1);
  };
  rec(rec, 0);
  return best;
}

}  // namespace oracle
