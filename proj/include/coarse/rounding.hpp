#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarse/family.hpp"
#include "coarse/graph.hpp"
#include "coarse/lp.hpp"

namespace coarse {

struct FractionalCover {
  double value = 0.0;
  std::vector<double> weights;  // per set index
};

/// min sum z_F  s.t. every vertex of S lies in sets of total weight >= 1.
FractionalCover fractional_cover(const LayeredFamily& fam, std::span<const Vertex> s);

struct Cover {
  VertexSet centers;
  std::vector<int> sets;
};

/// Greedy max-coverage: repeatedly takes the set covering most uncovered vertices of S
/// (ties to the smaller center).
Cover greedy_cover(const LayeredFamily& fam, std::span<const Vertex> s);

struct BoundLedger {
  double lp_objective = 0.0;
  int thickness = 1;
  int n = 0;
  double claimed_bound = 0.0;
  double achieved = 0.0;
  bool satisfied = true;
};

struct RoundRecord {
  Vertex u_bar = -1;
  int heavy_size = 0;
  int heavy_x = 0;
  int ell = 0;
  double r_ell = 0.0;
  double mu_ball = 0.0;       // mu(B_C(u, r_ell))
  double mu_boundary = 0.0;   // mu(delta_C(u, r_ell))
  double mu_next_ball = 0.0;  // mu(B_C(u, r_{ell+1}))
  bool local = true;          // no set meets both B_C(u, r_ell) and delta_C(u, r_ell)
  bool additive = true;       // mu_next_ball >= mu_ball + mu_boundary - tol
  VertexSet added;            // S' of this round (downward closed)
  int a_x = 0;                // |A cap X|
  int b_size = 0;
};

struct SeparatorCertificate {
  std::string kind;  // "ab" or "balanced"
  VertexSet separator;
  FractionalCover fcov;
  VertexSet cover_centers;
  int radius_vertices = 1;  // each separator vertex has a path of this many vertices to a center
  BoundLedger ledger;
  VertexSet a, b;        // ab
  double threshold = 0;  // ab: the chosen r
  bool used_raw_weights = false;
  VertexSet x_set;       // balanced
  std::vector<RoundRecord> rounds;
};

/// Interval-threshold rounding of an A-B separator LP solution.
SeparatorCertificate round_ab_separator(const Graph& g, const LayeredFamily& fam,
                                        const AbLpSolution& sol, double tol = 1e-9);

/// Distinct threshold sets S_r with their fractional cover values, for tests of the sweep.
struct SweepPoint {
  double r = 0.0;
  VertexSet s;
  double fcov = 0.0;
};
std::vector<SweepPoint> ab_threshold_sweep(const Graph& g, const LayeredFamily& fam,
                                           std::span<const double> y, const VertexSet& a,
                                           const VertexSet& b, double& r_max);
VertexSet threshold_set(const std::vector<double>& d, std::span<const double> yv, double r);

struct RegionGrowParams {
  double f = 0.0;
  double eps = 0.0;
  int ell_max = 0;
  double z0_threshold = 0.0;
};

RegionGrowParams region_grow_params(double f, int thickness);

struct RegionGrowResult {
  bool heavy = false;  // false: no component of g - Z holds more than 95% of X
  VertexSet a, s, b;
  RoundRecord record;
};

/// One cutoff step on the heavy component of g - Z.
RegionGrowResult region_grow_once(const Graph& g, const LayeredFamily& fam, std::span<const double> x,
                                  const VertexSet& xs, const VertexSet& z, const LpOptions& opts = {});

SeparatorCertificate round_balanced_separator(const Graph& g, const LayeredFamily& fam,
                                              const BalancedLpSolution& sol,
                                              const LpOptions& opts = {});

/// True iff every component of g - S has at most phi |X| vertices of X.
bool is_balanced_separator(const Graph& g, const VertexSet& xs, const VertexSet& s, double phi);

/// True iff every vertex of S has a path on at most `radius_vertices` vertices to a center.
bool covered_within(const Graph& g, const VertexSet& s, const VertexSet& centers, int radius_vertices);

}  // namespace coarse
