#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

/// Ordered partition (V_1, ..., V_h) of V(G).
struct OrderedPartition {
  std::vector<VertexSet> parts;
  std::vector<int> part_of;  // vertex -> part index
};

/// Validates that `parts` partitions V(g) (empty parts are dropped).
OrderedPartition make_ordered_partition(const Graph& g, std::vector<VertexSet> parts);

/// Partition of h's vertices induced through h's labels (ids of the parent graph).
OrderedPartition restrict_partition(const OrderedPartition& parent, const Graph& h);

int degeneracy(const Graph& g);

/// U_i = vertices of degree <= 4d in the residual graph G[V_i]. Requires d >= degeneracy(g).
OrderedPartition degeneracy_layering(const Graph& g, int d);

/// The layered family of (G, Pi): one set F_w per center w, holding w and every
/// vertex reachable from w by arcs to strictly lower parts.
class LayeredFamily {
 public:
  const OrderedPartition& partition() const { return partition_; }
  int num_vertices() const { return static_cast<int>(parents_.size()); }
  int num_sets() const { return static_cast<int>(centers_.size()); }
  const VertexSet& centers() const { return centers_; }
  Vertex center(int set) const { return centers_[set]; }
  const VertexSet& members(int set) const { return sets_[set]; }
  const std::vector<VertexSet>& sets() const { return sets_; }
  int set_of_center(Vertex v) const { return set_of_center_[v]; }
  std::span<const int> sets_containing(Vertex v) const { return containing_[v]; }
  std::span<const Vertex> parents(Vertex v) const { return parents_[v]; }
  std::span<const Vertex> children(Vertex v) const { return children_[v]; }
  int thickness() const { return thickness_; }

  friend LayeredFamily build_layered_family(const Graph& g, const OrderedPartition& pi);
  friend VertexSet upward_closure(const LayeredFamily& fam, std::span<const Vertex> s);
  friend VertexSet downward_closure(const LayeredFamily& fam, std::span<const Vertex> s);

 private:
  OrderedPartition partition_;
  std::vector<VertexSet> parents_, children_;
  VertexSet centers_;
  std::vector<VertexSet> sets_;
  std::vector<int> set_of_center_;
  std::vector<std::vector<int>> containing_;
  int thickness_ = 1;
};

LayeredFamily build_layered_family(const Graph& g, const OrderedPartition& pi);

struct WitnessingReport {
  int worst_excess = 0;  // max over v and F containing v of |N[v] \ F|
  Vertex worst_vertex = -1;
  int worst_set = -1;
  bool ok = true;
};

WitnessingReport verify_witnessing(const Graph& g, const LayeredFamily& fam, int d);

/// A path inside F_set from u to v of at most 2k-1 vertices.
Path ancestral_path(const Graph& g, const LayeredFamily& fam, int set, Vertex u, Vertex v);

VertexSet upward_closure(const LayeredFamily& fam, std::span<const Vertex> s);
VertexSet downward_closure(const LayeredFamily& fam, std::span<const Vertex> s);

enum class MinimalityVerdict { minimal, witness, exhausted };

struct UpwardMinimality {
  MinimalityVerdict verdict = MinimalityVerdict::minimal;
  Path witness;  // an induced path with the same endpoints, set when verdict == witness
  std::uint64_t explored = 0;
};

/// Searches the paths with P's endpoints inside G[upward closure of P].
UpwardMinimality is_upward_minimal(const Graph& g, const LayeredFamily& fam, const Path& p,
                                   std::uint64_t budget);

/// Number of sets of the family meeting P.
int sets_meeting(const LayeredFamily& fam, std::span<const Vertex> p);
/// Indices of the sets meeting `s`, sorted.
std::vector<int> sets_hit(const LayeredFamily& fam, std::span<const Vertex> s);

}  // namespace coarse
