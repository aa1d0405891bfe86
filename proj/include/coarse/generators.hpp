#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

/// A graph with a pair of terminal sets (empty when the kind has none).
struct Fixture {
  Graph g;
  VertexSet a, b;
};

Graph grid_graph(int rows, int cols);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph star_graph(int leaves);
Graph complete_graph(int n);
Graph complete_bipartite(int p, int q);
/// G(n, p) from a seeded 64-bit Mersenne twister.
Graph gnp_graph(int n, double p, std::uint64_t seed);
/// Connected variant: a random spanning tree plus G(n, p) edges.
Graph connected_gnp_graph(int n, double p, std::uint64_t seed);

/// Two terminals joined by `branches` internally disjoint paths of `length` inner vertices.
Fixture theta_graph(int branches, int length);
/// `width` pairwise anticomplete paths of `length` edges; A = starts, B = ends.
Fixture corridor_graph(int width, int length);
/// `width` paths from A into a hub and `width` paths from the hub out to B.
Fixture bottleneck_graph(int width, int length);
/// Two spiders (three legs of `radius` edges) whose centers are joined by `gap` edges.
Fixture two_balls_graph(int radius, int gap);

/// Dispatch used by the CLI: kind in {grid, path, star, cycle, gnp, theta, corridor,
/// bottleneck, two-balls}; `a`, `b` are the size parameters and `p` the edge probability.
Fixture generate(const std::string& kind, int a, int b, double p, std::uint64_t seed);

}  // namespace coarse
