#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/generators.hpp"
#include "coarse/lp.hpp"
#include "coarse/rounding.hpp"
#include "coarse/sampling.hpp"
#include "coarse/weights.hpp"
#include "support/oracles.hpp"

using namespace coarse;

namespace {

OrderedPartition single_part(const Graph& g) {
  VertexSet all(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) all[v] = v;
  return make_ordered_partition(g, {all});
}

LayeredFamily random_family(const Graph& g, int parts, std::mt19937_64& rng) {
  auto labels = oracle::random_parts(g.num_vertices(), parts, rng);
  return build_layered_family(g, make_ordered_partition(g, oracle::parts_from_labels(labels)));
}

double oracle_fcov(const LayeredFamily& fam, const VertexSet& s) {
  if (s.empty()) return 0.0;
  int m = fam.num_sets();
  std::vector<double> c(m, 1.0), h;
  std::vector<std::vector<double>> rows;
  for (Vertex v : s) {
    std::vector<double> r(m, 0.0);
    for (int j : fam.sets_containing(v)) r[j] = 1.0;
    rows.push_back(r);
    h.push_back(1.0);
  }
  return oracle::lp_min(c, rows, h);
}

}  // namespace

TEST_CASE("vertex weighted distances") {
  auto p3 = path_graph(3);
  auto z = vertex_weighted_distance(p3, std::vector<double>{0, 0, 0}, std::vector<Vertex>{0});
  CHECK(z.dist == std::vector<double>{0, 0, 0});
  auto d = vertex_weighted_distance(p3, std::vector<double>{0, 1, 0}, std::vector<Vertex>{0});
  CHECK(d.dist == std::vector<double>{0, 1, 1});
  CHECK(trace_path(d, 2) == Path{0, 1, 2});
  auto g = parse_edge_list("# n=3\n0 1");
  auto u = vertex_weighted_distance(g, std::vector<double>{1, 1, 1}, std::vector<Vertex>{0});
  CHECK(u.dist[2] == kInfiniteDistance);
  CHECK(u.dist[1] == 2.0);
}

TEST_CASE("fractional and greedy covers") {
  auto star = star_graph(3);
  auto fs = build_layered_family(star, degeneracy_layering(star, 1));
  CHECK(greedy_cover(fs, std::vector<Vertex>{}).centers.empty());
  auto one = greedy_cover(fs, fs.members(0));
  CHECK(one.centers == VertexSet{0});
  auto p4 = path_graph(4);
  auto fam = build_layered_family(p4, make_ordered_partition(p4, {{0, 3}, {1, 2}}));
  // Sets: F_1 = {0,1}, F_2 = {2,3}.
  REQUIRE(fam.num_sets() == 2);
  auto two = greedy_cover(fam, std::vector<Vertex>{0, 3});
  CHECK(two.centers.size() == 2);
  CHECK(fractional_cover(fam, std::vector<Vertex>{0, 3}).value == doctest::Approx(2.0));

  std::mt19937_64 rng(4);
  for (int it = 0; it < 40; ++it) {
    int n = 4 + static_cast<int>(rng() % 7);
    auto g = gnp_graph(n, 0.35, 700 + it);
    auto f = random_family(g, 3, rng);
    if (f.num_sets() > 7) continue;
    auto s = oracle::random_subset(n, 0.5, rng);
    double fc = fractional_cover(f, s).value;
    CHECK(fc == doctest::Approx(oracle_fcov(f, s)).epsilon(1e-6));
    auto gc = greedy_cover(f, s);
    CHECK(static_cast<double>(gc.centers.size()) <= fc * std::log(std::max(2, n)) + 1 + 1e-9);
    VertexSet covered;
    for (int j : gc.sets) covered = set_union(covered, f.members(j));
    for (Vertex v : s) CHECK(set_contains(covered, v));
  }
}

TEST_CASE("AB rounding examples") {
  auto p3 = path_graph(3);
  auto f3 = build_layered_family(p3, single_part(p3));
  AbLpSolution sol;
  sol.a = {0};
  sol.b = {2};
  sol.x = {0.0, 1.0, 0.0};
  sol.objective = 1.0;
  auto cert = round_ab_separator(p3, f3, sol);
  CHECK(cert.separator == VertexSet{1});
  CHECK(cert.fcov.value == doctest::Approx(1.0));

  auto p2 = path_graph(2);
  auto f2 = build_layered_family(p2, single_part(p2));
  AbLpSolution adj;
  adj.a = {0};
  adj.b = {1};
  adj.x = {0.0, 1.0};
  adj.objective = 1.0;
  CHECK(round_ab_separator(p2, f2, adj).separator == VertexSet{1});

  auto g = parse_edge_list("# n=4\n0 1\n2 3");
  auto fg = build_layered_family(g, single_part(g));
  auto u = solve_ab_lp(g, fg, {0}, {3}, LpMode::exact);
  auto cu = round_ab_separator(g, fg, u);
  CHECK(cu.separator.empty());
  CHECK(cu.fcov.value == 0.0);

  AbLpSolution bad = sol;
  bad.x = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(round_ab_separator(p3, f3, bad), ValidationError);
}

TEST_CASE("AB rounding separates within the bound and the sweep is optimal") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 30; ++it) {
    int n = 4 + static_cast<int>(rng() % 14);
    auto g = connected_gnp_graph(n, 0.2, 800 + it);
    auto fam = random_family(g, 2, rng);
    VertexSet a{0}, b{n - 1};
    auto sol = solve_ab_lp_auto(g, fam, a, b);
    auto cert = round_ab_separator(g, fam, sol);
    CHECK(separates(g, a, b, cert.separator));
    CHECK(cert.ledger.satisfied);
    CHECK(cert.fcov.value <= 8.0 * fam.thickness() * std::log2(2.0 * n) * sol.objective + 1e-6);

    if (cert.used_raw_weights) continue;
    auto y = normalize_weights(sol.x);
    auto yv = vertex_mass(fam, y);
    auto d = vertex_weighted_distance(g, yv, a).dist;
    double r_max = 0.0;
    auto sweep = ab_threshold_sweep(g, fam, y, a, b, r_max);
    double best = 1e18;
    for (const auto& p : sweep) best = std::min(best, p.fcov);
    std::map<VertexSet, double> cache;
    std::mt19937_64 r2(it);
    for (int i = 0; i < 10000; ++i) {
      double r = r_max * (1.0 - unit_draw(r2));
      auto s = threshold_set(d, yv, r);
      auto [pos, fresh] = cache.try_emplace(s, 0.0);
      if (fresh) pos->second = fractional_cover(fam, s).value;
      CHECK(pos->second >= best - 1e-9);
    }
  }
}

TEST_CASE("region growing parameters") {
  auto p = region_grow_params(1.0, 2);
  CHECK(p.eps == doctest::Approx(1.0 / (500.0 * std::log2(5.0))));
  CHECK(p.ell_max == static_cast<int>(std::ceil(std::log2(5.0 / p.eps))));
  CHECK(p.z0_threshold == doctest::Approx(p.eps / 4.0));
}

TEST_CASE("balanced rounding examples") {
  auto star = star_graph(5);
  auto fs = build_layered_family(star, degeneracy_layering(star, 1));
  auto sol = solve_balanced_lp(star, fs, {0}, LpMode::exact);
  auto cert = round_balanced_separator(star, fs, sol);
  CHECK(cert.separator == fs.members(0));
  CHECK(is_balanced_separator(star, {0}, cert.separator, 0.95));

  auto p3 = path_graph(3);
  auto f3 = build_layered_family(p3, single_part(p3));
  BalancedLpSolution zero;
  zero.x_set = {1};
  zero.x = {0, 0, 0};
  zero.objective = 0.0;
  CHECK_THROWS_AS(round_balanced_separator(p3, f3, zero), ValidationError);
}

TEST_CASE("region growing step on P3 with mass at the middle") {
  auto p3 = path_graph(3);
  auto f3 = build_layered_family(p3, single_part(p3));
  auto sol = solve_balanced_lp(p3, f3, {0, 1, 2}, LpMode::exact);
  REQUIRE(sol.objective > 0);
  std::vector<double> x{0.0, sol.objective, 0.0};
  auto step = region_grow_once(p3, f3, x, {0, 1, 2}, {});
  if (step.heavy) {
    CHECK(step.a.size() + step.s.size() + step.b.size() <= 3);
    CHECK(separates(p3, step.a, step.b, step.s));
  }
  auto cert = round_balanced_separator(p3, f3, sol);
  CHECK(is_balanced_separator(p3, {0, 1, 2}, cert.separator, 0.95));
}

TEST_CASE("balanced rounding on random instances") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 25; ++it) {
    int n = 5 + static_cast<int>(rng() % 20);
    auto g = connected_gnp_graph(n, 0.15, 900 + it);
    auto fam = random_family(g, 2, rng);
    VertexSet xs;
    for (Vertex c : fam.centers())
      if (rng() % 3 == 0) xs.push_back(c);
    if (xs.empty()) xs.push_back(fam.centers().front());
    auto sol = solve_balanced_lp_auto(g, fam, xs);
    if (sol.objective <= 0.0) continue;
    auto cert = round_balanced_separator(g, fam, sol);
    CHECK(is_balanced_separator(g, xs, cert.separator, 0.95));
    CHECK(downward_closure(fam, cert.separator) == cert.separator);
    CHECK(cert.ledger.satisfied);
    for (const auto& r : cert.rounds)
      if (r.local) CHECK(r.additive);
  }
}

TEST_CASE("balance and cover predicates") {
  auto p5 = path_graph(5);
  CHECK(is_balanced_separator(p5, {0, 4}, {2}, 0.5));
  CHECK_FALSE(is_balanced_separator(p5, {0, 1, 4}, {2}, 0.5));
  CHECK(covered_within(p5, {0, 1, 2}, {0}, 3));
  CHECK_FALSE(covered_within(p5, {0, 1, 2, 3}, {0}, 3));
}
