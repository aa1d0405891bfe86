#include "coarse/family.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>

#include "coarse/errors.hpp"

namespace coarse {

OrderedPartition make_ordered_partition(const Graph& g, std::vector<VertexSet> parts) {
  OrderedPartition pi;
  pi.part_of.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  for (auto& part : parts) {
    part = make_set(std::move(part));
    if (part.empty()) continue;
    int idx = static_cast<int>(pi.parts.size());
    for (Vertex v : part) {
      require(g.contains(v), "partition names unknown vertex " + std::to_string(v));
      require(pi.part_of[v] == -1, "vertex " + std::to_string(v) + " appears in two parts");
      pi.part_of[v] = idx;
    }
    pi.parts.push_back(std::move(part));
  }
  for (Vertex v = 0; v < g.num_vertices(); ++v)
    require(pi.part_of[v] != -1, "vertex " + std::to_string(v) + " missing from partition");
  return pi;
}

OrderedPartition restrict_partition(const OrderedPartition& parent, const Graph& h) {
  std::vector<VertexSet> parts(parent.parts.size());
  for (Vertex v = 0; v < h.num_vertices(); ++v) parts[parent.part_of[h.label(v)]].push_back(v);
  return make_ordered_partition(h, std::move(parts));
}

int degeneracy(const Graph& g) {
  int n = g.num_vertices();
  std::vector<int> deg(static_cast<std::size_t>(n));
  int maxd = 0;
  for (Vertex v = 0; v < n; ++v) maxd = std::max(maxd, deg[v] = g.degree(v));
  std::vector<std::vector<Vertex>> bucket(static_cast<std::size_t>(maxd) + 1);
  for (Vertex v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  int result = 0, cur = 0;
  for (int removed = 0; removed < n;) {
    cur = std::max(0, cur - 1);
    while (bucket[cur].empty()) ++cur;
    Vertex v = bucket[cur].back();
    bucket[cur].pop_back();
    if (gone[v] || deg[v] != cur) continue;
    gone[v] = 1;
    ++removed;
    result = std::max(result, cur);
    for (Vertex w : g.neighbors(v))
      if (!gone[w]) bucket[--deg[w]].push_back(w);
  }
  return result;
}

OrderedPartition degeneracy_layering(const Graph& g, int d) {
  require(d >= 0, "degeneracy bound must be non-negative");
  require(d >= degeneracy(g), "d below the degeneracy of the graph");
  int n = g.num_vertices();
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  std::vector<VertexSet> parts;
  int left = n;
  while (left > 0) {
    VertexSet layer;
    for (Vertex v = 0; v < n; ++v)
      if (!gone[v] && deg[v] <= 4 * d) layer.push_back(v);
    ensure(!layer.empty(), "degeneracy layering stalled");
    for (Vertex v : layer) gone[v] = 1;
    for (Vertex v : layer)
      for (Vertex w : g.neighbors(v))
        if (!gone[w]) --deg[w];
    left -= static_cast<int>(layer.size());
    parts.push_back(std::move(layer));
  }
  return make_ordered_partition(g, std::move(parts));
}

LayeredFamily build_layered_family(const Graph& g, const OrderedPartition& pi) {
  int n = g.num_vertices();
  require(static_cast<int>(pi.part_of.size()) == n, "partition size does not match graph");
  LayeredFamily fam;
  fam.partition_ = pi;
  fam.parents_.assign(static_cast<std::size_t>(n), {});
  fam.children_.assign(static_cast<std::size_t>(n), {});
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : g.neighbors(u))
      if (pi.part_of[u] > pi.part_of[v]) {
        fam.children_[u].push_back(v);
        fam.parents_[v].push_back(u);
      }
  fam.set_of_center_.assign(static_cast<std::size_t>(n), -1);
  fam.containing_.assign(static_cast<std::size_t>(n), {});
  for (Vertex w = 0; w < n; ++w) {
    if (!fam.parents_[w].empty()) continue;
    int id = static_cast<int>(fam.centers_.size());
    fam.centers_.push_back(w);
    fam.set_of_center_[w] = id;
    fam.sets_.push_back(downward_closure(fam, std::span<const Vertex>(&w, 1)));
  }
  fam.thickness_ = 1;
  std::vector<int> stamp(pi.parts.size(), -1);
  for (int i = 0; i < fam.num_sets(); ++i) {
    int distinct = 0;
    for (Vertex v : fam.sets_[i]) {
      fam.containing_[v].push_back(i);
      if (stamp[pi.part_of[v]] != i) {
        stamp[pi.part_of[v]] = i;
        ++distinct;
      }
    }
    fam.thickness_ = std::max(fam.thickness_, distinct);
  }
  return fam;
}

WitnessingReport verify_witnessing(const Graph& g, const LayeredFamily& fam, int d) {
  WitnessingReport r;
  std::vector<int> mark(static_cast<std::size_t>(g.num_vertices()), -1);
  for (int i = 0; i < fam.num_sets(); ++i) {
    for (Vertex v : fam.members(i)) mark[v] = i;
    for (Vertex v : fam.members(i)) {
      int excess = 0;
      for (Vertex w : g.neighbors(v))
        if (mark[w] != i) ++excess;
      if (excess > r.worst_excess) {
        r.worst_excess = excess;
        r.worst_vertex = v;
        r.worst_set = i;
      }
    }
  }
  r.ok = r.worst_excess <= d;
  return r;
}

namespace {

VertexSet closure(std::span<const Vertex> s, const std::vector<VertexSet>& step, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  VertexSet out;
  for (Vertex v : s)
    if (!seen[v]) {
      seen[v] = 1;
      out.push_back(v);
    }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (Vertex w : step[out[i]])
      if (!seen[w]) {
        seen[w] = 1;
        out.push_back(w);
      }
  std::sort(out.begin(), out.end());
  return out;
}

boost::dynamic_bitset<> as_bits(int n, const VertexSet& s) {
  boost::dynamic_bitset<> b(static_cast<std::size_t>(n));
  for (Vertex v : s) b.set(static_cast<std::size_t>(v));
  return b;
}

}  // namespace

VertexSet upward_closure(const LayeredFamily& fam, std::span<const Vertex> s) {
  return closure(s, fam.parents_, fam.num_vertices());
}

VertexSet downward_closure(const LayeredFamily& fam, std::span<const Vertex> s) {
  return closure(s, fam.children_, fam.num_vertices());
}

Path ancestral_path(const Graph& g, const LayeredFamily& fam, int set, Vertex u, Vertex v) {
  require(set >= 0 && set < fam.num_sets(), "unknown set");
  const auto& f = fam.members(set);
  require(set_contains(f, u) && set_contains(f, v), "endpoints must lie in the set");
  auto in_f = membership(g.num_vertices(), f);
  auto chain = [&](Vertex x) {
    Path c{x};
    while (!fam.parents(c.back()).empty()) {
      Vertex next = -1;
      for (Vertex p : fam.parents(c.back()))
        if (in_f[p]) {
          next = p;
          break;
        }
      if (next < 0) break;
      c.push_back(next);
    }
    ensure(c.back() == fam.center(set), "parent chain left the set");
    return c;
  };
  Path walk = chain(u);
  Path down = chain(v);
  walk.insert(walk.end(), down.rbegin() + 1, down.rend());
  return extract_induced_path_from_walk(g, walk);
}

UpwardMinimality is_upward_minimal(const Graph& g, const LayeredFamily& fam, const Path& p,
                                   std::uint64_t budget) {
  require(is_path(g, p), "not a path");
  UpwardMinimality r;
  if (p.size() == 1) return r;
  int n = g.num_vertices();
  VertexSet hat = upward_closure(fam, p);
  auto hat_bits = as_bits(n, hat);
  auto allowed = membership(n, hat);
  Vertex s = p.front(), t = p.back();

  Path best;
  std::size_t best_closure = hat.size();
  std::size_t best_len = p.size();
  Path cur{s};
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  on[s] = 1;
  bool stop = false;
  auto dfs = [&](auto&& self) -> void {
    if (stop) return;
    Vertex last = cur.back();
    if (last == t) {
      if (++r.explored > budget) {
        stop = true;
        return;
      }
      VertexSet c = upward_closure(fam, cur);
      auto bits = as_bits(n, c);
      bool strict = bits.is_proper_subset_of(hat_bits);
      bool equal_shorter = bits == hat_bits && cur.size() < p.size();
      if ((strict || equal_shorter) &&
          (c.size() < best_closure || (c.size() == best_closure && cur.size() < best_len))) {
        best = cur;
        best_closure = c.size();
        best_len = cur.size();
      }
      return;
    }
    for (Vertex w : g.neighbors(last)) {
      if (!allowed[w] || on[w]) continue;
      on[w] = 1;
      cur.push_back(w);
      self(self);
      cur.pop_back();
      on[w] = 0;
      if (stop) return;
    }
  };
  dfs(dfs);
  if (!best.empty()) {
    r.verdict = MinimalityVerdict::witness;
    r.witness = extract_induced_path_from_walk(g, best);
  } else if (stop) {
    r.verdict = MinimalityVerdict::exhausted;
  }
  return r;
}

std::vector<int> sets_hit(const LayeredFamily& fam, std::span<const Vertex> s) {
  std::vector<int> out;
  for (Vertex v : s)
    for (int i : fam.sets_containing(v)) out.push_back(i);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int sets_meeting(const LayeredFamily& fam, std::span<const Vertex> p) {
  return static_cast<int>(sets_hit(fam, p).size());
}

}  // namespace coarse
