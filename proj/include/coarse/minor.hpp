#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/graph.hpp"

namespace coarse {

/// Induced K_{t,t} minor model: branch sets A_1..A_t and B_1..B_t.
struct MinorModel {
  int t = 0;
  std::vector<VertexSet> side_a;
  std::vector<VertexSet> side_b;
};

/// Checks disjointness, connectivity, all A_i-B_j adjacencies and the absence of
/// edges between distinct branch sets on the same side. `why` gets the first failure.
bool verify_minor_model(const Graph& g, const MinorModel& m, int t, std::string* why = nullptr);

enum class SearchVerdict { found, absent, inconclusive };

struct MinorSearchResult {
  SearchVerdict verdict = SearchVerdict::inconclusive;
  std::optional<MinorModel> model;
  std::uint64_t nodes = 0;
};

/// Exhaustive labelling search; intended for n <= 14.
MinorSearchResult detect_ktt_induced_minor(const Graph& g, int t, std::uint64_t budget);

}  // namespace coarse
