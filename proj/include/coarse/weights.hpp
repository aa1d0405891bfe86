#pragma once

#include <limits>
#include <span>
#include <vector>

#include "coarse/family.hpp"
#include "coarse/graph.hpp"

namespace coarse {

constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

struct WeightedDistances {
  std::vector<double> dist;  // kInfiniteDistance when unreachable
  std::vector<Vertex> pred;  // -1 at sources and unreached vertices
};

/// Minimum over paths from `sources` of the summed vertex weights, both endpoints included.
/// Vertices with allowed[v] == 0 are never entered (an empty mask allows all).
WeightedDistances vertex_weighted_distance(const Graph& g, std::span<const double> weights,
                                           std::span<const Vertex> sources,
                                           const std::vector<char>& allowed = {});

Path trace_path(const WeightedDistances& wd, Vertex target);

/// x_v = sum of x_F over the sets containing v.
std::vector<double> vertex_mass(const LayeredFamily& fam, std::span<const double> x);

/// mu(U) = sum of x_F over the sets meeting U.
double measure(const LayeredFamily& fam, std::span<const double> x, std::span<const Vertex> u);

}  // namespace coarse
