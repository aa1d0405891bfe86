#include "coarse/minor.hpp"

#include <algorithm>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

bool fail(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
  return false;
}

}  // namespace

bool verify_minor_model(const Graph& g, const MinorModel& m, int t, std::string* why) {
  if (t < 1) return fail(why, "t must be positive");
  if (m.t != t || static_cast<int>(m.side_a.size()) != t || static_cast<int>(m.side_b.size()) != t)
    return fail(why, "model does not have t branch sets per side");
  int n = g.num_vertices();
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<const VertexSet*> sets;
  for (const auto& s : m.side_a) sets.push_back(&s);
  for (const auto& s : m.side_b) sets.push_back(&s);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& s = *sets[i];
    if (s.empty()) return fail(why, "empty branch set");
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
      return fail(why, "branch set not a sorted set");
    for (Vertex v : s) {
      if (!g.contains(v)) return fail(why, "unknown vertex " + std::to_string(v));
      if (owner[v] != -1) return fail(why, "branch sets overlap at " + std::to_string(v));
      owner[v] = static_cast<int>(i);
    }
    if (!is_connected_set(g, s)) return fail(why, "branch set " + std::to_string(i) + " disconnected");
  }
  std::vector<std::vector<char>> adj(sets.size(), std::vector<char>(sets.size(), 0));
  for (auto [u, v] : g.edges())
    if (owner[u] >= 0 && owner[v] >= 0 && owner[u] != owner[v]) adj[owner[u]][owner[v]] = adj[owner[v]][owner[u]] = 1;
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      if (!adj[i][t + j])
        return fail(why, "A_" + std::to_string(i) + " and B_" + std::to_string(j) + " not adjacent");
      if (i != j && (adj[i][j] || adj[t + i][t + j]))
        return fail(why, "same-side branch sets " + std::to_string(i) + "," + std::to_string(j) + " adjacent");
    }
  return true;
}

namespace {

struct MinorSearch {
  const Graph& g;
  int t;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::vector<int> label;  // 0 unused, 1..t side A, t+1..2t side B
  int used_a = 0, used_b = 0;
  bool exhausted = false;
  std::optional<MinorModel> found;

  int side(int l) const { return l <= t ? 0 : 1; }

  bool compatible(Vertex v, int l) const {
    for (Vertex w : g.neighbors(v)) {
      if (w >= v || label[w] == 0 || label[w] == l) continue;
      if (side(label[w]) == side(l)) return false;
    }
    return true;
  }

  void check_leaf() {
    if (used_a < t || used_b < t) return;
    MinorModel m{t, std::vector<VertexSet>(t), std::vector<VertexSet>(t)};
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      int l = label[v];
      if (l == 0) continue;
      (l <= t ? m.side_a[l - 1] : m.side_b[l - t - 1]).push_back(v);
    }
    if (verify_minor_model(g, m, t)) found = std::move(m);
  }

  void search(Vertex v) {
    if (found || exhausted) return;
    if (++nodes > budget) {
      exhausted = true;
      return;
    }
    int n = g.num_vertices();
    if (n - v < (t - used_a) + (t - used_b)) return;
    if (v == n) {
      check_leaf();
      return;
    }
    label[v] = 0;
    search(v + 1);
    for (int l = 1; l <= 2 * t && !found && !exhausted; ++l) {
      bool is_a = l <= t;
      int idx = is_a ? l : l - t;
      int& used = is_a ? used_a : used_b;
      if (idx > used + 1) continue;  // introduce branch sets in order
      if (!is_a && used_a == 0) continue;  // the side holding the first labelled vertex is A
      if (!compatible(v, l)) continue;
      bool fresh = idx == used + 1;
      if (fresh) ++used;
      label[v] = l;
      search(v + 1);
      label[v] = 0;
      if (fresh) --used;
    }
  }
};

}  // namespace

MinorSearchResult detect_ktt_induced_minor(const Graph& g, int t, std::uint64_t budget) {
  require(t >= 1, "t must be positive");
  MinorSearch s{g, t, budget, 0, std::vector<int>(static_cast<std::size_t>(g.num_vertices()), 0), 0, 0, false, {}};
  s.search(0);
  MinorSearchResult r;
  r.nodes = s.nodes;
  if (s.found) {
    r.verdict = SearchVerdict::found;
    r.model = std::move(s.found);
  } else {
    r.verdict = s.exhausted ? SearchVerdict::inconclusive : SearchVerdict::absent;
  }
  return r;
}

}  // namespace coarse
