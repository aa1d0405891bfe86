#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarse/graph.hpp"
#include "coarse/minor.hpp"

namespace coarse {

struct ComponentWitness {
  int part = 0;
  VertexSet component;
  Vertex center = -1;
  int radius_vertices = 4;
};

struct RadiusPartition {
  std::vector<VertexSet> parts;
  std::vector<ComponentWitness> witnesses;  // one per component of each g[part]
};

/// Greedy partition whose part components are (1,4)-coverable in g.
RadiusPartition greedy_four_radius_partition(const Graph& g);

/// Checks that the parts partition V(g) and that each recorded center reaches its
/// component by paths on at most four vertices of g. `why` gets the first failure.
bool verify_radius_partition(const Graph& g, const RadiusPartition& rp, std::string* why = nullptr);

struct LayerSplit {
  int layer = 0;  // i: B is a component of D_i
  VertexSet t, m, b;
};

/// For each BFS layer D_i (i >= 2) of g[Y] from v0 and each component C of g[D_i]:
/// T = D_0 u ... u D_{i-2}, M = D_{i-1}, B = C.
std::vector<LayerSplit> bfs_layer_split(const Graph& g, const VertexSet& y, Vertex v0);

/// N(T) cap Y within M, g[T] and g[B] connected, B dominated by M, M dominated by T.
bool verify_layer_split(const Graph& g, const VertexSet& y, const LayerSplit& s, std::string* why = nullptr);

struct KttExtraction {
  std::optional<MinorModel> model;
  std::vector<LayerSplit> layers;  // the chosen split per round
  VertexSet u;                     // the scattered set in the last layer
  std::string failure;             // why no model was assembled
};

/// Best-effort construction of an induced K_{t,t} model through repeated layer splits.
/// A missing model proves nothing.
KttExtraction extract_ktt_model(const Graph& g, int t);

struct EdgePartition {
  std::vector<std::vector<Edge>> parts;
  std::vector<char> clean;  // max degree of (V, part) at most 2
  int s = 0;                // largest component of any (V, part), in vertices
  int cluttered = 0;
};

/// Greedy star partition: within a part, stars are vertex-disjoint.
EdgePartition star_edge_partition(const Graph& g);

/// Validates that `parts` partitions E(g) and fills in the flags and sizes.
EdgePartition classify_parts(const Graph& g, std::vector<std::vector<Edge>> parts);

/// Components (as vertex sets, size >= 2) of the graph (V, part).
std::vector<VertexSet> part_components(int n, const std::vector<Edge>& part);

}  // namespace coarse
