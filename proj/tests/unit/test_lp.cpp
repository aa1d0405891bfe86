#include <doctest.h>

#include <random>

#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/generators.hpp"
#include "coarse/lp.hpp"
#include "coarse/simplex.hpp"
#include "support/oracles.hpp"

using namespace coarse;

namespace {

OrderedPartition single_part(const Graph& g) {
  VertexSet all(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) all[v] = v;
  return make_ordered_partition(g, {all});
}

bool meets(const VertexSet& f, const Path& p) {
  for (Vertex v : p)
    if (set_contains(f, v)) return true;
  return false;
}

// Dense AB LP handed to the basic-solution oracle.
double oracle_ab(const Graph& g, const LayeredFamily& fam, const VertexSet& a, const VertexSet& b) {
  auto paths = oracle::naive_induced_paths(g, a, b);
  int m = fam.num_sets();
  std::vector<double> c(m, 1.0), h;
  std::vector<std::vector<double>> rows;
  for (const auto& p : paths) {
    std::vector<double> r(m, 0.0);
    for (int s = 0; s < m; ++s) r[s] = meets(fam.members(s), p) ? 1.0 : 0.0;
    rows.push_back(r);
    h.push_back(1.0);
  }
  return oracle::lp_min(c, rows, h);
}

}  // namespace

TEST_CASE("simplex on a small packing LP") {
  // max y1 + y2  s.t.  y1 + 2 y2 <= 4,  3 y1 + y2 <= 6
  lp::PackingLp p({4.0, 6.0});
  p.add_column({1.0, {{0, 1.0}, {1, 3.0}}});
  p.add_column({1.0, {{0, 2.0}, {1, 1.0}}});
  auto r = p.solve();
  REQUIRE(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(2.8));
  double dual = 4.0 * r.duals[0] + 6.0 * r.duals[1];
  CHECK(dual == doctest::Approx(2.8));
  p.add_column({1.0, {}});
  CHECK(p.solve().status == lp::Status::unbounded);
}

TEST_CASE("AB LP examples") {
  auto p3 = path_graph(3);
  auto f3 = build_layered_family(p3, single_part(p3));
  auto s = solve_ab_lp(p3, f3, {0}, {2}, LpMode::exact);
  CHECK(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(1.0));
  CHECK(check_strong_duality(s.objective, s.dual_objective));

  auto g = parse_edge_list("# n=4\n0 1\n2 3");
  auto fg = build_layered_family(g, single_part(g));
  auto u = solve_ab_lp(g, fg, {0}, {3}, LpMode::exact);
  CHECK(u.status == LpStatus::unreachable);
  CHECK(u.objective == 0.0);
  CHECK(u.dual.empty());

  auto c4 = cycle_graph(4);
  auto f4 = build_layered_family(c4, single_part(c4));
  auto c = solve_ab_lp(c4, f4, {0}, {2}, LpMode::exact);
  // Singleton sets: F_0 alone meets every path.
  CHECK(c.objective == doctest::Approx(1.0));
  CHECK(c.dual_objective == doctest::Approx(1.0));
  auto fast = solve_ab_lp(c4, f4, {0}, {2}, LpMode::fast);
  CHECK(fast.objective <= c.objective + 1e-6);

  auto overflow = solve_ab_lp(c4, f4, {0}, {2}, LpMode::exact, LpOptions{1e-9, 1, 100});
  CHECK(overflow.status == LpStatus::overflow);
}

TEST_CASE("exact AB LP agrees with the dense reference") {
  std::mt19937_64 rng(8);
  int compared = 0;
  for (int it = 0; it < 60; ++it) {
    int n = 3 + static_cast<int>(rng() % 6);
    auto g = connected_gnp_graph(n, 0.35, 400 + it);
    auto labels = oracle::random_parts(n, 1 + static_cast<int>(rng() % 3), rng);
    auto fam = build_layered_family(g, make_ordered_partition(g, oracle::parts_from_labels(labels)));
    if (fam.num_sets() > 7) continue;
    VertexSet a{0}, b{n - 1};
    auto paths = oracle::naive_induced_paths(g, a, b);
    if (paths.size() > 10) continue;
    auto sol = solve_ab_lp(g, fam, a, b, LpMode::exact);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(oracle_ab(g, fam, a, b)).epsilon(1e-6));
    CHECK(check_strong_duality(sol.objective, sol.dual_objective));
    for (const auto& p : paths) {
      double cov = 0.0;
      for (int s = 0; s < fam.num_sets(); ++s)
        if (meets(fam.members(s), p)) cov += sol.x[s];
      CHECK(cov >= 1.0 - 1e-6);
    }
    std::vector<double> load(fam.num_sets(), 0.0);
    for (const auto& wp : sol.dual)
      for (int s = 0; s < fam.num_sets(); ++s)
        if (meets(fam.members(s), wp.path)) load[s] += wp.weight;
    for (double l : load) CHECK(l <= 1.0 + 1e-6);
    auto fast = solve_ab_lp(g, fam, a, b, LpMode::fast);
    CHECK(fast.objective <= sol.objective + 1e-6);
    ++compared;
  }
  CHECK(compared >= 20);
}

TEST_CASE("normalization") {
  CHECK(normalize_weights(std::vector<double>{0.0, 0.0}) == std::vector<double>{0.0, 0.0});
  auto y = normalize_weights(std::vector<double>{0.4, 0.0, 0.0});
  CHECK(y[0] == doctest::Approx(0.8));
  auto z = normalize_weights(std::vector<double>{1.0 / 24.0, 0.0, 0.0});
  CHECK(z[0] == 0.0);
  CHECK(normalize_weights(std::vector<double>{0.7})[0] == 1.0);

  std::mt19937_64 rng(13);
  for (int it = 0; it < 30; ++it) {
    int n = 4 + static_cast<int>(rng() % 6);
    auto g = connected_gnp_graph(n, 0.3, 500 + it);
    auto labels = oracle::random_parts(n, 2, rng);
    auto fam = build_layered_family(g, make_ordered_partition(g, oracle::parts_from_labels(labels)));
    auto sol = solve_ab_lp(g, fam, {0}, {n - 1}, LpMode::exact);
    auto nz = normalize_ab_solution(fam, sol);
    CHECK(nz.objective <= 2.0 * sol.objective + 1e-9);
    for (double w : nz.x)
      if (w > 0) {
        CHECK(w >= 1.0 / fam.num_sets() - 1e-12);
        CHECK(w <= 1.0);
      }
    for (const auto& p : oracle::naive_induced_paths(g, {0}, {n - 1})) {
      double cov = 0.0;
      for (int s = 0; s < fam.num_sets(); ++s)
        if (meets(fam.members(s), p)) cov += nz.x[s];
      CHECK(cov >= 1.0 - 1e-6);
    }
  }
}

TEST_CASE("dual restriction to upward minimal paths") {
  auto c4 = cycle_graph(4);
  auto f4 = build_layered_family(c4, single_part(c4));
  AbLpSolution sol;
  sol.a = {0};
  sol.b = {1};
  sol.x = {0.5, 0.5, 0.0, 0.0};
  sol.objective = 1.0;
  sol.dual = {{{0, 3, 2, 1}, 0.5}};
  sol.dual_objective = 0.5;
  auto r = restrict_dual_to_upward_minimal(c4, f4, sol);
  REQUIRE(r.dual.size() == 1);
  CHECK(r.dual[0].path == Path{0, 1});
  CHECK(r.dual[0].weight == doctest::Approx(0.5));
  CHECK(r.dual_objective == doctest::Approx(0.5));

  AbLpSolution zero = sol;
  zero.dual.clear();
  CHECK(restrict_dual_to_upward_minimal(c4, f4, zero).dual.empty());

  auto p4 = path_graph(4);
  auto fp = build_layered_family(p4, single_part(p4));
  auto s = solve_ab_lp(p4, fp, {0}, {3}, LpMode::exact);
  auto rs = restrict_dual_to_upward_minimal(p4, fp, s);
  REQUIRE(rs.dual.size() == s.dual.size());
  CHECK(rs.dual[0].path == s.dual[0].path);
}

TEST_CASE("balanced LP examples") {
  auto p3 = path_graph(3);
  auto f3 = build_layered_family(p3, single_part(p3));
  auto one = solve_balanced_lp(p3, f3, {1}, LpMode::exact);
  CHECK(one.objective == doctest::Approx(0.1));

  auto g = parse_edge_list("# n=2\n");
  auto fg = build_layered_family(g, single_part(g));
  auto two = solve_balanced_lp(g, fg, {0, 1}, LpMode::exact);
  CHECK(two.objective == doctest::Approx(0.0).epsilon(1e-9));

  CHECK_THROWS_AS(solve_balanced_lp(p3, f3, {}, LpMode::exact), ValidationError);
}

TEST_CASE("balanced LP on P3 against the dense reference") {
  auto p3 = path_graph(3);
  auto f3 = build_layered_family(p3, single_part(p3));
  VertexSet xs{0, 2};
  auto sol = solve_balanced_lp(p3, f3, xs, LpMode::exact);
  // Variables: x0 x1 x2 d00 d02 d20 d22.
  std::vector<double> c{1, 1, 1, 0, 0, 0, 0};
  std::vector<std::vector<double>> rows{
      {0, 0, 0, 1, 1, 0, 0},   {0, 0, 0, 0, 0, 1, 1},   // coverage >= |X|/10
      {1, 0, 0, -1, 0, 0, 0},  {1, 1, 1, 0, -1, 0, 0},  // d <= path mass
      {1, 1, 1, 0, 0, -1, 0},  {0, 0, 1, 0, 0, 0, -1},
      {0, 0, 0, -1, 0, 0, 0},  {0, 0, 0, 0, -1, 0, 0},  // d <= 1
      {0, 0, 0, 0, 0, -1, 0},  {0, 0, 0, 0, 0, 0, -1}};
  std::vector<double> h{0.2, 0.2, 0, 0, 0, 0, -1, -1, -1, -1};
  double ref = oracle::lp_min(c, rows, h);
  CHECK(sol.objective == doctest::Approx(ref).epsilon(1e-6));
  auto chk = check_balanced_dual(f3, sol);
  CHECK(chk.max_set_load <= 1.0 + 1e-6);
  CHECK(chk.max_row_violation <= 1e-6);
  CHECK(chk.max_eta_excess <= 1e-6);
  CHECK(chk.ten_f_le_rho_x);
  CHECK(check_strong_duality(sol.objective, sol.dual.objective));
}

TEST_CASE("balanced dual invariants on random instances") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 25; ++it) {
    int n = 4 + static_cast<int>(rng() % 8);
    auto g = connected_gnp_graph(n, 0.3, 600 + it);
    auto labels = oracle::random_parts(n, 2, rng);
    auto fam = build_layered_family(g, make_ordered_partition(g, oracle::parts_from_labels(labels)));
    VertexSet xs;
    for (Vertex c : fam.centers())
      if (rng() % 2 == 0) xs.push_back(c);
    if (xs.empty()) xs.push_back(fam.centers().front());
    auto sol = solve_balanced_lp(g, fam, xs, LpMode::exact);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(check_strong_duality(sol.objective, sol.dual.objective));
    auto chk = check_balanced_dual(fam, sol);
    CHECK(chk.max_set_load <= 1.0 + 1e-6);
    CHECK(chk.max_row_violation <= 1e-6);
    CHECK(chk.max_eta_excess <= 1e-6);
    CHECK(chk.ten_f_le_rho_x);
    auto fast = solve_balanced_lp(g, fam, xs, LpMode::fast);
    CHECK(fast.objective <= sol.objective + 1e-6);
  }
}

TEST_CASE("strong duality check and minimal subpaths") {
  CHECK(check_strong_duality(1.0, 1.0));
  CHECK_FALSE(check_strong_duality(1.0, 2.0));
  CHECK(check_strong_duality(0.0, 0.0));
  std::vector<char> in_a{1, 1, 0, 0, 0}, in_b{0, 0, 0, 1, 1};
  CHECK(minimal_ab_subpath({0, 1, 2, 3, 4}, in_a, in_b) == Path{1, 2, 3});
}
