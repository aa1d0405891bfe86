#include "coarse/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>

#include "coarse/errors.hpp"

namespace coarse {

Graph::Graph(int n) : adj_(static_cast<std::size_t>(n)), labels_(static_cast<std::size_t>(n)) {
  require(n >= 0, "negative vertex count");
  std::iota(labels_.begin(), labels_.end(), 0);
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    require(g.contains(u) && g.contains(v),
            "edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    require(u != v, "self-loop at " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nb : g.adj_) {
    std::sort(nb.begin(), nb.end());
    require(std::adjacent_find(nb.begin(), nb.end()) == nb.end(), "duplicate edge");
  }
  g.m_ = edges.size();
  return g;
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
  return d;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Vertex u = 0; u < num_vertices(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

void Graph::set_labels(std::vector<Vertex> labels) {
  require(labels.size() == adj_.size(), "label count mismatch");
  labels_ = std::move(labels);
}

// ── edge-list I/O ──

namespace {

bool parse_int(std::string_view tok, long long& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  long long declared_n = -1;
  long long max_id = -1;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      auto toks = split_ws(line.substr(hash + 1));
      if (!toks.empty() && toks[0].starts_with("n=")) {
        long long n;
        if (!parse_int(toks[0].substr(2), n) || n < 0)
          throw ParseError(line_no, "bad vertex-count header");
        declared_n = n;
      }
      line = line.substr(0, hash);
    }
    auto toks = split_ws(line);
    if (toks.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (toks.size() != 2) throw ParseError(line_no, "expected two vertex ids");
    long long u, v;
    if (!parse_int(toks[0], u) || !parse_int(toks[1], v) || u < 0 || v < 0 ||
        u > std::numeric_limits<int>::max() / 2 || v > std::numeric_limits<int>::max() / 2)
      throw ParseError(line_no, "vertex ids must be non-negative integers");
    if (u == v) throw ParseError(line_no, "self-loop at " + std::to_string(u));
    edges.emplace_back(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
    edge_line.push_back(line_no);
    max_id = std::max({max_id, u, v});
    if (end == text.size()) break;
  }
  long long n = declared_n >= 0 ? declared_n : max_id + 1;
  if (declared_n >= 0 && max_id >= declared_n)
    throw ParseError(line_no, "vertex id exceeds declared n=" + std::to_string(declared_n));
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] < edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (edges[order[i]] == edges[order[i - 1]])
      throw ParseError(edge_line[order[i]], "duplicate edge " + std::to_string(edges[order[i]].first) +
                                                " " + std::to_string(edges[order[i]].second));
  return Graph::from_edges(static_cast<int>(n), edges);
}

Graph read_edge_list(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_edge_list(text);
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "# n=" << g.num_vertices() << "\n";
  for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
  return os.str();
}

// ── sets ──

VertexSet make_set(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool set_contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<char> membership(int n, std::span<const Vertex> s) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : s) in[v] = 1;
  return in;
}

void check_vertices(const Graph& g, std::span<const Vertex> s, const char* what) {
  for (Vertex v : s)
    require(g.contains(v), std::string(what) + " contains unknown vertex " + std::to_string(v));
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
  check_vertices(g, s, "induced vertex set");
  std::vector<int> pos(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < s.size(); ++i) pos[s[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (Vertex w : g.neighbors(s[i]))
      if (pos[w] > static_cast<int>(i)) edges.emplace_back(static_cast<Vertex>(i), pos[w]);
  Graph h = Graph::from_edges(static_cast<int>(s.size()), edges);
  h.set_labels(s);
  return h;
}

std::vector<VertexSet> components_without(const Graph& g, const std::vector<char>& removed) {
  int n = g.num_vertices();
  std::vector<char> seen(removed.begin(), removed.end());
  seen.resize(static_cast<std::size_t>(n), 0);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<VertexSet> connected_components(const Graph& g) {
  return components_without(g, std::vector<char>(static_cast<std::size_t>(g.num_vertices()), 0));
}

bool is_connected_set(const Graph& g, const VertexSet& s) {
  if (s.empty()) return false;
  auto allowed = membership(g.num_vertices(), s);
  auto dist = hop_distances_within(g, std::span<const Vertex>(&s[0], 1), allowed);
  return std::all_of(s.begin(), s.end(), [&](Vertex v) { return dist[v] != kUnreachable; });
}

std::pair<Graph, QuotientMap> quotient_by_components(const Graph& g,
                                                     const std::vector<VertexSet>& parts) {
  int n = g.num_vertices();
  std::vector<int> part_of(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (Vertex v : parts[i]) {
      require(g.contains(v), "partition names unknown vertex " + std::to_string(v));
      require(part_of[v] == -1, "vertex " + std::to_string(v) + " in two parts");
      part_of[v] = static_cast<int>(i);
    }
  for (Vertex v = 0; v < n; ++v) require(part_of[v] != -1, "vertex " + std::to_string(v) + " uncovered");

  QuotientMap q;
  q.block_of = part_of;
  for (const auto& part : parts) {
    VertexSet block = make_set(part);
    require(!block.empty(), "empty part in quotient");
    require(is_connected_set(g, block), "part containing " + std::to_string(block.front()) +
                                            " does not induce a connected subgraph");
    q.blocks.push_back(std::move(block));
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    int a = q.block_of[u], b = q.block_of[v];
    if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return {Graph::from_edges(static_cast<int>(q.blocks.size()), edges), std::move(q)};
}

std::vector<int> hop_distances_within(const Graph& g, std::span<const Vertex> sources,
                                      const std::vector<char>& allowed) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), kUnreachable);
  std::queue<Vertex> q;
  for (Vertex s : sources)
    if (allowed[s] && dist[s] != 0) {
      dist[s] = 0;
      q.push(s);
    }
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v))
      if (allowed[w] && dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

std::vector<int> hop_distances(const Graph& g, std::span<const Vertex> sources) {
  check_vertices(g, sources, "source set");
  return hop_distances_within(g, sources, std::vector<char>(static_cast<std::size_t>(g.num_vertices()), 1));
}

bool separates(const Graph& g, const VertexSet& a, const VertexSet& b, const VertexSet& s) {
  auto allowed = membership(g.num_vertices(), s);
  for (auto& c : allowed) c = !c;
  auto dist = hop_distances_within(g, a, allowed);
  return std::none_of(b.begin(), b.end(), [&](Vertex v) { return dist[v] != kUnreachable; });
}

// ── paths ──

namespace {

struct PathEnumerator {
  const Graph& g;
  std::vector<char> in_a, in_b, on_path;
  std::vector<int> touch;  // number of path vertices adjacent to each vertex
  Path path;
  std::size_t cap;
  PathSet out;

  void push(Vertex v) {
    path.push_back(v);
    on_path[v] = 1;
    for (Vertex w : g.neighbors(v)) ++touch[w];
  }
  void pop() {
    Vertex v = path.back();
    path.pop_back();
    on_path[v] = 0;
    for (Vertex w : g.neighbors(v)) --touch[w];
  }
  bool emit() {
    out.paths.push_back(path);
    if (out.paths.size() > cap) {
      out.overflow = true;
      return false;
    }
    return true;
  }
  bool extend() {
    Vertex last = path.back();
    for (Vertex w : g.neighbors(last)) {
      if (on_path[w] || touch[w] != 1 || in_a[w]) continue;
      push(w);
      bool ok = in_b[w] ? emit() : extend();
      pop();
      if (!ok) return false;
    }
    return true;
  }
};

}  // namespace

PathSet enumerate_induced_paths(const Graph& g, const VertexSet& a, const VertexSet& b,
                                std::size_t cap) {
  check_vertices(g, a, "A");
  check_vertices(g, b, "B");
  int n = g.num_vertices();
  PathEnumerator e{g, membership(n, a), membership(n, b), std::vector<char>(n, 0),
                   std::vector<int>(n, 0), {}, cap, {}};
  for (Vertex s : a) {
    e.push(s);
    bool ok = e.in_b[s] ? e.emit() : e.extend();
    e.pop();
    if (!ok) break;
  }
  if (e.out.overflow) e.out.paths.pop_back();
  std::sort(e.out.paths.begin(), e.out.paths.end());
  return std::move(e.out);
}

Path shortest_path_within(const Graph& g, const VertexSet& a, const VertexSet& b,
                          const std::vector<char>& allowed) {
  auto from_b = hop_distances_within(g, b, allowed);
  Vertex best = -1;
  for (Vertex s : a)
    if (allowed[s] && from_b[s] != kUnreachable && (best < 0 || from_b[s] < from_b[best])) best = s;
  if (best < 0) return {};
  Path p{best};
  while (from_b[p.back()] > 0) {
    Vertex cur = p.back();
    for (Vertex w : g.neighbors(cur))  // sorted, so the first hit is the least id
      if (allowed[w] && from_b[w] == from_b[cur] - 1) {
        p.push_back(w);
        break;
      }
  }
  return p;
}

Path extract_induced_path_from_walk(const Graph& g, std::span<const Vertex> walk) {
  require(!walk.empty(), "empty walk");
  check_vertices(g, walk, "walk");
  for (std::size_t i = 1; i < walk.size(); ++i)
    require(g.adjacent(walk[i - 1], walk[i]), "walk uses a non-edge");
  auto allowed = membership(g.num_vertices(), walk);
  return shortest_path_within(g, {walk.front()}, {walk.back()}, allowed);
}

bool is_path(const Graph& g, std::span<const Vertex> p) {
  if (p.empty()) return false;
  for (Vertex v : p)
    if (!g.contains(v)) return false;
  VertexSet s(p.begin(), p.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return false;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!g.adjacent(p[i - 1], p[i])) return false;
  return true;
}

bool is_induced_path(const Graph& g, std::span<const Vertex> p) {
  if (!is_path(g, p)) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 2; j < p.size(); ++j)
      if (g.adjacent(p[i], p[j])) return false;
  return true;
}

bool is_anticomplete(const Graph& g, const VertexSet& s1, const VertexSet& s2) {
  auto in2 = membership(g.num_vertices(), s2);
  for (Vertex v : s1) {
    if (in2[v]) return false;
    for (Vertex w : g.neighbors(v))
      if (in2[w]) return false;
  }
  return true;
}

}  // namespace coarse
