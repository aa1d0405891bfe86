#include "coarse/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

// Vertices within `depth` edges of c in g, with their distances.
std::vector<std::pair<Vertex, int>> bounded_bfs(const Graph& g, Vertex c, int depth,
                                                std::vector<int>& dist_scratch) {
  std::vector<std::pair<Vertex, int>> out{{c, 0}};
  dist_scratch[c] = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto [v, dv] = out[i];
    if (dv == depth) continue;
    for (Vertex w : g.neighbors(v))
      if (dist_scratch[w] < 0) {
        dist_scratch[w] = dv + 1;
        out.emplace_back(w, dv + 1);
      }
  }
  for (auto [v, dv] : out) dist_scratch[v] = -1;
  return out;
}

}  // namespace

RadiusPartition greedy_four_radius_partition(const Graph& g) {
  int n = g.num_vertices();
  RadiusPartition rp;
  std::vector<int> part_of(static_cast<std::size_t>(n), -1);
  std::vector<int> ball_of(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> ball_center;
  std::vector<int> scratch(static_cast<std::size_t>(n), -1);
  int left = n;
  while (left > 0) {
    int p = static_cast<int>(rp.parts.size());
    std::vector<char> avail(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) avail[v] = part_of[v] < 0;
    VertexSet part;
    while (true) {
      Vertex best = -1;
      int best_count = 0, best_ecc = 0;
      for (Vertex c = 0; c < n; ++c) {
        if (!avail[c]) continue;
        int count = 0, ecc = 0;
        for (auto [v, dv] : bounded_bfs(g, c, 3, scratch))
          if (avail[v]) {
            ++count;
            ecc = std::max(ecc, dv);
          }
        if (count > best_count || (count == best_count && ecc < best_ecc)) {
          best = c;
          best_count = count;
          best_ecc = ecc;
        }
      }
      if (best < 0) break;
      VertexSet q;
      for (auto [v, dv] : bounded_bfs(g, best, 3, scratch))
        if (avail[v]) q.push_back(v);
      int ball = static_cast<int>(ball_center.size());
      ball_center.push_back(best);
      for (Vertex v : q) {
        part_of[v] = p;
        ball_of[v] = ball;
        part.push_back(v);
        --left;
      }
      for (Vertex v : q) {
        avail[v] = 0;
        for (Vertex w : g.neighbors(v)) avail[w] = 0;
      }
    }
    rp.parts.push_back(make_set(std::move(part)));
  }
  for (int p = 0; p < static_cast<int>(rp.parts.size()); ++p) {
    std::vector<char> removed(static_cast<std::size_t>(n), 1);
    for (Vertex v : rp.parts[p]) removed[v] = 0;
    for (auto& comp : components_without(g, removed)) {
      int ball = ball_of[comp.front()];
      for (Vertex v : comp) ensure(ball_of[v] == ball, "two balls of one part touch");
      rp.witnesses.push_back({p, std::move(comp), ball_center[ball], 4});
    }
  }
  return rp;
}

bool verify_radius_partition(const Graph& g, const RadiusPartition& rp, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  int n = g.num_vertices();
  std::vector<int> part_of(static_cast<std::size_t>(n), -1);
  for (int p = 0; p < static_cast<int>(rp.parts.size()); ++p)
    for (Vertex v : rp.parts[p]) {
      if (!g.contains(v)) return fail("unknown vertex " + std::to_string(v));
      if (part_of[v] >= 0) return fail("vertex " + std::to_string(v) + " in two parts");
      part_of[v] = p;
    }
  for (Vertex v = 0; v < n; ++v)
    if (part_of[v] < 0) return fail("vertex " + std::to_string(v) + " not in any part");
  std::set<std::pair<int, VertexSet>> recorded;
  for (const auto& w : rp.witnesses) {
    recorded.emplace(w.part, w.component);
    if (!g.contains(w.center)) return fail("unknown center");
    auto dist = hop_distances(g, std::span<const Vertex>(&w.center, 1));
    for (Vertex v : w.component)
      if (dist[v] == kUnreachable || dist[v] > w.radius_vertices - 1 || w.radius_vertices > 4)
        return fail("vertex " + std::to_string(v) + " is not within four vertices of center " +
                    std::to_string(w.center));
  }
  for (int p = 0; p < static_cast<int>(rp.parts.size()); ++p) {
    std::vector<char> removed(static_cast<std::size_t>(n), 1);
    for (Vertex v : rp.parts[p]) removed[v] = 0;
    for (auto& comp : components_without(g, removed))
      if (!recorded.count({p, comp}))
        return fail("component of part " + std::to_string(p) + " at vertex " +
                    std::to_string(comp.front()) + " has no witness");
  }
  return true;
}

std::vector<LayerSplit> bfs_layer_split(const Graph& g, const VertexSet& y, Vertex v0) {
  check_vertices(g, y, "Y");
  require(set_contains(y, v0), "v0 must lie in Y");
  std::vector<LayerSplit> out;
  if (y.size() < 3) return out;
  auto allowed = membership(g.num_vertices(), y);
  auto dist = hop_distances_within(g, std::span<const Vertex>(&v0, 1), allowed);
  std::vector<VertexSet> layers;
  for (Vertex v : y) {
    require(dist[v] != kUnreachable, "g[Y] must be connected");
    if (dist[v] >= static_cast<int>(layers.size())) layers.resize(static_cast<std::size_t>(dist[v]) + 1);
    layers[dist[v]].push_back(v);
  }
  VertexSet t;
  for (int i = 2; i < static_cast<int>(layers.size()); ++i) {
    t = set_union(t, layers[i - 2]);
    std::vector<char> removed(static_cast<std::size_t>(g.num_vertices()), 1);
    for (Vertex v : layers[i]) removed[v] = 0;
    for (auto& comp : components_without(g, removed)) out.push_back({i, t, layers[i - 1], std::move(comp)});
  }
  return out;
}

bool verify_layer_split(const Graph& g, const VertexSet& y, const LayerSplit& s, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  for (const auto* part : {&s.t, &s.m, &s.b})
    if (!set_difference(*part, y).empty()) return fail("split leaves Y");
  if (!set_intersection(s.t, s.m).empty() || !set_intersection(s.t, s.b).empty() ||
      !set_intersection(s.m, s.b).empty())
    return fail("T, M, B are not disjoint");
  if (s.t.empty() || s.b.empty()) return fail("empty T or B");
  for (Vertex v : s.t)
    for (Vertex w : g.neighbors(v))
      if (set_contains(y, w) && !set_contains(s.t, w) && !set_contains(s.m, w))
        return fail("N(T) cap Y is not inside M");
  if (!is_connected_set(g, s.t)) return fail("g[T] is disconnected");
  if (!is_connected_set(g, s.b)) return fail("g[B] is disconnected");
  auto has_neighbor_in = [&](Vertex v, const VertexSet& in) {
    auto nb = g.neighbors(v);
    return std::any_of(nb.begin(), nb.end(), [&](Vertex w) { return set_contains(in, w); });
  };
  for (Vertex v : s.b)
    if (!has_neighbor_in(v, s.m)) return fail("vertex of B without a neighbor in M");
  for (Vertex v : s.m)
    if (!has_neighbor_in(v, s.t)) return fail("vertex of M without a neighbor in T");
  return true;
}

namespace {

// t vertices of `pool` with pairwise hop distance >= 5 in g; empty if the search fails.
VertexSet scattered_subset(const Graph& g, const VertexSet& pool, int t, std::uint64_t budget) {
  int m = static_cast<int>(pool.size());
  std::vector<std::vector<char>> far(static_cast<std::size_t>(m), std::vector<char>(static_cast<std::size_t>(m), 0));
  for (int i = 0; i < m; ++i) {
    auto dist = hop_distances(g, std::span<const Vertex>(&pool[i], 1));
    for (int j = 0; j < m; ++j) far[i][j] = dist[pool[j]] == kUnreachable || dist[pool[j]] >= 5;
  }
  std::vector<int> chosen;
  std::uint64_t nodes = 0;
  auto rec = [&](auto&& self, int from) -> bool {
    if (static_cast<int>(chosen.size()) == t) return true;
    if (++nodes > budget) return false;
    for (int i = from; i + (t - static_cast<int>(chosen.size())) <= m; ++i) {
      if (!std::all_of(chosen.begin(), chosen.end(), [&](int c) { return far[c][i] != 0; })) continue;
      chosen.push_back(i);
      if (self(self, i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(rec, 0)) return {};
  VertexSet out;
  for (int i : chosen) out.push_back(pool[i]);
  return out;
}

}  // namespace

KttExtraction extract_ktt_model(const Graph& g, int t) {
  require(t >= 1, "t must be positive");
  KttExtraction out;
  auto edges = g.edges();
  if (t == 1) {
    if (edges.empty()) {
      out.failure = "no edge";
      return out;
    }
    out.model = MinorModel{1, {{edges.front().first}}, {{edges.front().second}}};
    ensure(verify_minor_model(g, *out.model, 1), "assembled K_{1,1} model is invalid");
    return out;
  }
  auto comps = connected_components(g);
  std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::map<VertexSet, int> estimate;
  auto pi4 = [&](const VertexSet& b) {
    auto it = estimate.find(b);
    if (it != estimate.end()) return it->second;
    int e = static_cast<int>(greedy_four_radius_partition(induced_subgraph(g, b)).parts.size());
    estimate.emplace(b, e);
    return e;
  };
  for (const auto& comp : comps) {
    if (comp.size() < 3) continue;
    std::vector<LayerSplit> chosen;
    VertexSet v = comp;
    bool ok = true;
    for (int i = 0; i < t && ok; ++i) {
      std::optional<LayerSplit> best;
      std::tuple<int, int, int> best_key{};
      for (Vertex v0 : v)
        for (auto& s : bfs_layer_split(g, v, v0)) {
          std::tuple<int, int, int> key{pi4(s.b), static_cast<int>(s.b.size()), -s.b.front()};
          if (!best || key > best_key) {
            best = std::move(s);
            best_key = key;
          }
        }
      if (!best) {
        ok = false;
        out.failure = "round " + std::to_string(i + 1) + " has no layer split";
        break;
      }
      ensure(verify_layer_split(g, v, *best), "layer split violates its invariants");
      v = best->b;
      chosen.push_back(std::move(*best));
    }
    if (!ok) continue;
    VertexSet u = scattered_subset(g, v, t, 1'000'000);
    if (u.empty()) {
      out.failure = "last layer has no " + std::to_string(t) + " vertices at pairwise distance >= 5";
      out.layers = chosen;
      continue;
    }
    MinorModel m{t, {}, {}};
    for (int i = 0; i < t; ++i) {
      m.side_a.push_back(chosen[i].t);
      VertexSet bi{u[i]};
      for (int j = 0; j < t; ++j) {
        auto nb = g.neighbors(u[i]);
        auto it = std::find_if(nb.begin(), nb.end(), [&](Vertex w) { return set_contains(chosen[j].m, w); });
        ensure(it != nb.end(), "scattered vertex without a neighbor in a middle layer");
        bi.push_back(*it);
      }
      m.side_b.push_back(make_set(std::move(bi)));
    }
    std::string why;
    ensure(verify_minor_model(g, m, t, &why), "assembled K_{t,t} model is invalid: " + why);
    out.model = std::move(m);
    out.layers = std::move(chosen);
    out.u = std::move(u);
    out.failure.clear();
    return out;
  }
  if (out.failure.empty()) out.failure = "no component with three vertices";
  return out;
}

std::vector<VertexSet> part_components(int n, const std::vector<Edge>& part) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<char> touched(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : part) {
    touched[u] = touched[v] = 1;
    parent[find(u)] = find(v);
  }
  std::map<int, VertexSet> groups;
  for (Vertex v = 0; v < n; ++v)
    if (touched[v]) groups[find(v)].push_back(v);
  std::vector<VertexSet> out;
  for (auto& [r, s] : groups) out.push_back(std::move(s));
  std::sort(out.begin(), out.end());
  return out;
}

EdgePartition classify_parts(const Graph& g, std::vector<std::vector<Edge>> parts) {
  int n = g.num_vertices();
  std::set<Edge> seen;
  EdgePartition out;
  for (auto& part : parts) {
    for (auto& [u, v] : part) {
      require(g.contains(u) && g.contains(v) && g.adjacent(u, v),
              "edge " + std::to_string(u) + " " + std::to_string(v) + " is not in the graph");
      if (u > v) std::swap(u, v);
      require(seen.insert({u, v}).second,
              "edge " + std::to_string(u) + " " + std::to_string(v) + " is in two parts");
    }
    std::sort(part.begin(), part.end());
  }
  require(seen.size() == g.num_edges(), "edge partition does not cover every edge");
  for (const auto& part : parts) {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    int maxdeg = 0;
    for (auto [u, v] : part) maxdeg = std::max({maxdeg, ++deg[u], ++deg[v]});
    bool clean = maxdeg <= 2;
    out.clean.push_back(clean);
    if (!clean) ++out.cluttered;
    for (const auto& c : part_components(n, part)) out.s = std::max(out.s, static_cast<int>(c.size()));
  }
  out.parts = std::move(parts);
  return out;
}

EdgePartition star_edge_partition(const Graph& g) {
  int n = g.num_vertices();
  std::vector<std::set<Vertex>> rem(static_cast<std::size_t>(n));
  std::size_t left = 0;
  for (auto [u, v] : g.edges()) {
    rem[u].insert(v);
    rem[v].insert(u);
    ++left;
  }
  std::vector<std::vector<Edge>> parts;
  while (left > 0) {
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<Edge> part;
    while (true) {
      Vertex best = -1;
      int best_deg = 0;
      for (Vertex c = 0; c < n; ++c) {
        if (used[c]) continue;
        int d = 0;
        for (Vertex w : rem[c]) d += !used[w];
        if (d > best_deg) {
          best = c;
          best_deg = d;
        }
      }
      if (best < 0) break;
      used[best] = 1;
      std::vector<Vertex> leaves;
      for (Vertex w : rem[best])
        if (!used[w]) leaves.push_back(w);
      for (Vertex w : leaves) {
        used[w] = 1;
        rem[best].erase(w);
        rem[w].erase(best);
        part.emplace_back(std::min(best, w), std::max(best, w));
        --left;
      }
    }
    parts.push_back(std::move(part));
  }
  return classify_parts(g, std::move(parts));
}

}  // namespace coarse
