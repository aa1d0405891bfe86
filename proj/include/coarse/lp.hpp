#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "coarse/family.hpp"
#include "coarse/graph.hpp"

namespace coarse {

enum class LpMode { exact, fast };
enum class LpStatus { optimal, unreachable, overflow };

std::string to_string(LpMode m);
LpMode parse_lp_mode(const std::string& s);

struct LpOptions {
  double tol = 1e-9;
  std::size_t path_cap = 200'000;
  std::size_t max_rounds = 100'000;  // column-generation rounds in fast mode
};

struct WeightedPath {
  Path path;
  double weight = 0.0;
};

/// Solution of  min sum x_F  s.t.  sum_{F meets P} x_F >= 1  over A-B paths P,
/// together with its dual packing of paths.
struct AbLpSolution {
  LpMode mode = LpMode::exact;
  LpStatus status = LpStatus::optimal;
  VertexSet a, b;
  std::vector<double> x;  // per set index
  double objective = 0.0;
  std::vector<WeightedPath> dual;
  double dual_objective = 0.0;
  std::size_t columns = 0;
  bool minimality_warning = false;
};

AbLpSolution solve_ab_lp(const Graph& g, const LayeredFamily& fam, const VertexSet& a,
                         const VertexSet& b, LpMode mode, const LpOptions& opts = {});
/// Exact when the path enumeration fits under the cap, fast otherwise.
AbLpSolution solve_ab_lp_auto(const Graph& g, const LayeredFamily& fam, const VertexSet& a,
                              const VertexSet& b, const LpOptions& opts = {});

/// y_F = 0 if x_F < 1/(2|family|), else min{1, 2 x_F}.
std::vector<double> normalize_weights(std::span<const double> x);
AbLpSolution normalize_ab_solution(const LayeredFamily& fam, const AbLpSolution& sol);

/// Moves dual weight from upward non-minimal paths to their witnesses until every
/// supported path is upward minimal. On budget exhaustion the input is returned with
/// `minimality_warning` set.
AbLpSolution restrict_dual_to_upward_minimal(const Graph& g, const LayeredFamily& fam,
                                             const AbLpSolution& sol,
                                             std::uint64_t budget = 100'000);

struct BalancedTriple {
  int u = 0, v = 0;  // indices into X
  Path path;
  double weight = 0.0;
};

struct BalancedDual {
  std::vector<double> rho;  // per X index
  std::vector<double> eta;  // |X| x |X|, row-major
  std::vector<BalancedTriple> gamma;
  double objective = 0.0;
};

/// min sum x_F  s.t.  sum_v d_{u,v} >= |X|/10,  d_{u,v} <= sum_{F meets P} x_F,  d <= 1.
struct BalancedLpSolution {
  LpMode mode = LpMode::exact;
  LpStatus status = LpStatus::optimal;
  VertexSet x_set;
  std::vector<double> x;  // per set index
  std::vector<double> d;  // |X| x |X|, row-major
  double objective = 0.0;
  BalancedDual dual;
  std::size_t columns = 0;
  bool minimality_warning = false;
};

BalancedLpSolution solve_balanced_lp(const Graph& g, const LayeredFamily& fam, const VertexSet& x,
                                     LpMode mode, const LpOptions& opts = {});
BalancedLpSolution solve_balanced_lp_auto(const Graph& g, const LayeredFamily& fam,
                                          const VertexSet& x, const LpOptions& opts = {});
BalancedLpSolution restrict_balanced_dual_to_upward_minimal(const Graph& g, const LayeredFamily& fam,
                                                            const BalancedLpSolution& sol,
                                                            std::uint64_t budget = 100'000);

struct BalancedDualCheck {
  double max_set_load = 0.0;          // max_F sum of gamma over triples meeting F
  double max_row_violation = 0.0;     // max of rho_u - eta_{u,v} - sum_P gamma_{u,v,P}
  double max_eta_excess = 0.0;        // max_u sum_v eta_{u,v} - (|X|/10) rho_u
  double rho_total = 0.0;
  bool ten_f_le_rho_x = false;        // 10 f <= rho |X|
};

BalancedDualCheck check_balanced_dual(const LayeredFamily& fam, const BalancedLpSolution& sol,
                                      double tol = 1e-6);

bool check_strong_duality(double primal, double dual, double tol = 1e-6);

/// Subpath from the last A-vertex before the first B-vertex to that B-vertex.
Path minimal_ab_subpath(const Path& p, const std::vector<char>& in_a, const std::vector<char>& in_b);

}  // namespace coarse
