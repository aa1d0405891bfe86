#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace coarse {

using Vertex = int;
using VertexSet = std::vector<Vertex>;  // sorted, no duplicates
using Path = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Finite simple undirected graph on vertices 0..n-1.
/// `labels()` maps each vertex to an id in a parent graph (identity by default).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  /// Rejects self-loops, duplicate edges and out-of-range endpoints.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  std::size_t num_edges() const { return m_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;
  bool adjacent(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v >= 0 && v < num_vertices(); }
  std::vector<Edge> edges() const;  // u < v, sorted

  const std::vector<Vertex>& labels() const { return labels_; }
  Vertex label(Vertex v) const { return labels_[v]; }
  void set_labels(std::vector<Vertex> labels);

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Vertex> labels_;
  std::size_t m_ = 0;
};

/// Edge-list text: "u v" per line, '#' comments, optional "# n=N" header.
Graph parse_edge_list(std::string_view text);
Graph read_edge_list(std::istream& in);
std::string write_edge_list(const Graph& g);

VertexSet make_set(std::vector<Vertex> vs);
bool set_contains(const VertexSet& s, Vertex v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
std::vector<char> membership(int n, std::span<const Vertex> s);
void check_vertices(const Graph& g, std::span<const Vertex> s, const char* what);

/// Induced subgraph on `s`; vertex i of the result has label s[i] (an id of g).
Graph induced_subgraph(const Graph& g, const VertexSet& s);

struct QuotientMap {
  std::vector<VertexSet> blocks;  // block index -> vertices of g
  std::vector<int> block_of;      // vertex of g -> block index
};

/// Contracts each part (which must induce a connected subgraph) to one vertex.
std::pair<Graph, QuotientMap> quotient_by_components(const Graph& g,
                                                     const std::vector<VertexSet>& parts);

std::vector<VertexSet> connected_components(const Graph& g);
/// Components of g - removed.
std::vector<VertexSet> components_without(const Graph& g, const std::vector<char>& removed);
bool is_connected_set(const Graph& g, const VertexSet& s);

std::vector<int> hop_distances(const Graph& g, std::span<const Vertex> sources);
std::vector<int> hop_distances_within(const Graph& g, std::span<const Vertex> sources,
                                      const std::vector<char>& allowed);

/// True iff every A-B path of g meets `s`.
bool separates(const Graph& g, const VertexSet& a, const VertexSet& b, const VertexSet& s);

struct PathSet {
  std::vector<Path> paths;
  bool overflow = false;
};

/// Induced A-B paths that start in A, end in B and have no internal vertex in A u B.
/// Stops with `overflow` once more than `cap` paths are found.
PathSet enumerate_induced_paths(const Graph& g, const VertexSet& a, const VertexSet& b,
                                std::size_t cap);

/// Lexicographically least shortest path between the walk's endpoints inside
/// g[walk vertices]; such a path is induced.
Path extract_induced_path_from_walk(const Graph& g, std::span<const Vertex> walk);

/// Shortest A-B path inside g[allowed] with least vertex ids; empty if none.
Path shortest_path_within(const Graph& g, const VertexSet& a, const VertexSet& b,
                          const std::vector<char>& allowed);

bool is_path(const Graph& g, std::span<const Vertex> p);
bool is_induced_path(const Graph& g, std::span<const Vertex> p);
bool is_anticomplete(const Graph& g, const VertexSet& s1, const VertexSet& s2);

}  // namespace coarse
