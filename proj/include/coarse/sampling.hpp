#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "coarse/family.hpp"
#include "coarse/graph.hpp"
#include "coarse/lp.hpp"

namespace coarse {

constexpr int kMaxSampleAttempts = 64;

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct PathPacking {
  std::vector<Path> paths;        // multiset, in draw order
  std::vector<int> congestion;    // per set: number of drawn paths meeting it
  int max_intersection = 0;       // max over drawn P and F of |F cap P|
  int target = 0;                 // ceil(f * ell)
  double f = 0.0;
  double ell = 0.0;
  std::uint64_t seed = 0;
  int attempts = 0;
  bool accepted = false;
  std::vector<int> rejected_max_congestion;  // per rejected attempt
};

/// Draws ceil(f * ell) paths from the dual distribution y_P / f until every set meets
/// at most 6 ell of them. Attempt i uses seed + i.
PathPacking sample_path_multiset(const Graph& g, const LayeredFamily& fam, const AbLpSolution& sol,
                                 double ell, std::uint64_t seed, int max_attempts = kMaxSampleAttempts);

struct SampledTriple {
  int u = 0, v = 0;  // indices into X
  int gamma = -1;    // index into dual.gamma, -1 for the empty outcome
};

/// u with probability rho_u / rho, v uniform, then the empty outcome with probability
/// eta_uv / (eta_uv + gamma_uv), else a path with probability gamma_uvP / gamma_uv.
class TripleSampler {
 public:
  TripleSampler(const BalancedDual& dual, int x_size);
  SampledTriple draw(std::mt19937_64& rng) const;
  double empty_probability(int u, int v) const;

 private:
  const BalancedDual* dual_;
  int q_;
  std::vector<double> rho_cum_;
  std::vector<double> gamma_sum_;                // q x q
  std::vector<std::vector<int>> gamma_of_pair_;  // q x q -> indices into dual.gamma
};

struct SampledSubgraph {
  VertexSet vertices;  // V(H), ids of g
  Graph h;             // g[vertices]
  std::vector<SampledTriple> triples;
  std::vector<int> membership;  // per set: |F cap V(H)|
  double bound = 0.0;           // 1 + (3 ell / (5 f)) (2k - 1)
  int ell = 0;
  double f = 0.0;
  std::uint64_t seed = 0;
  int attempts = 0;
  bool accepted = false;
};

/// Smallest ell the construction allows: ceil(7 (f log n + |X| + 2)).
int dense_subgraph_min_ell(double f, int n, int x_size);

SampledSubgraph sample_dense_subgraph(const Graph& g, const LayeredFamily& fam,
                                      const BalancedLpSolution& sol, int ell, std::uint64_t seed,
                                      int max_attempts = kMaxSampleAttempts);

/// Splits A along an (A, 1/2)-balanced separator S into two sides of size at most 2|A|/3
/// that S separates.
std::pair<VertexSet, VertexSet> split_balanced_to_two_sided(const Graph& g, const VertexSet& a,
                                                            const VertexSet& s);

struct CoverAudit {
  bool ok = true;          // no subfamily of the audited size produced a bad set
  bool exhaustive = true;  // false when the budget ran out
  std::vector<int> counterexample;  // set indices
  std::uint64_t checked = 0;
};

/// Checks that no union of `size` sets of the family, intersected with V(H), satisfies `bad`.
/// `bad` receives the set in ids of g. Monotone predicates only need the largest size.
CoverAudit audit_cover_lower_bound(const LayeredFamily& fam, const VertexSet& hv, int size,
                                   const std::function<bool(const VertexSet&)>& bad,
                                   std::uint64_t budget = 2'000'000);

/// Every (X, 1/2)-balanced separator of H = g[hv] needs at least f sets of the family.
CoverAudit audit_balanced_separators(const Graph& g, const LayeredFamily& fam, const VertexSet& hv,
                                     const VertexSet& xs, double f, std::uint64_t budget = 2'000'000);

}  // namespace coarse
