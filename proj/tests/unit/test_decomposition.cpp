#include <doctest.h>

#include <random>

#include "coarse/decomposition.hpp"
#include "coarse/errors.hpp"
#include "coarse/generators.hpp"
#include "support/oracles.hpp"

using namespace coarse;

namespace {

OrderedPartition single_part(const Graph& g) {
  VertexSet all(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) all[v] = v;
  return make_ordered_partition(g, {all});
}

LayeredFamily degeneracy_family(const Graph& g) {
  return build_layered_family(g, degeneracy_layering(g, degeneracy(g)));
}

}  // namespace

TEST_CASE("branch names") {
  CHECK(parse_branch("auto") == BranchOverride::automatic);
  CHECK(parse_branch("separator") == BranchOverride::rounding);
  CHECK(parse_branch("packing") == BranchOverride::sampling);
  CHECK(to_string(BranchOverride::sampling) == "sampling");
  CHECK_THROWS_AS(parse_branch("other"), ValidationError);
}

TEST_CASE("balanced center separators") {
  auto star = star_graph(6);
  auto fs = degeneracy_family(star);
  auto s = balanced_center_separator(star, fs, {0});
  CHECK(s.rounded);
  CHECK(s.centers == VertexSet{0});
  CHECK(s.balanced);

  auto p6 = path_graph(6);
  auto fp = build_layered_family(p6, single_part(p6));
  auto one = balanced_center_separator(p6, fp, {2});
  CHECK(set_contains(one.expanded, 2));
  CHECK(is_balanced_separator(p6, {2}, one.expanded, 0.95));

  CenterSeparatorOptions sampling;
  sampling.branch = BranchOverride::sampling;
  auto d = balanced_center_separator(p6, fp, {0, 5}, sampling);
  CHECK_FALSE(d.rounded);
  CHECK(d.sampled.has_value());

  CHECK_THROWS_AS(balanced_center_separator(star, fs, {1}), ValidationError);
}

TEST_CASE("tree decomposition examples") {
  auto star = star_graph(5);
  auto fs = degeneracy_family(star);
  auto t1 = build_tree_decomposition(star, fs, {});
  REQUIRE(t1.nodes.size() == 1);
  CHECK(t1.nodes[0].bag.size() == 6);
  CHECK(validate_tree_decomposition(star, t1, &fs).ok);

  auto p4 = path_graph(4);
  auto fp = build_layered_family(p4, single_part(p4));
  auto t2 = build_tree_decomposition(p4, fp, {});
  auto r2 = validate_tree_decomposition(p4, t2, &fp);
  CHECK_MESSAGE(r2.ok, r2.message);

  // Two K_{1,5} stars whose centers are joined.
  std::vector<Edge> edges;
  for (int i = 1; i <= 5; ++i) edges.emplace_back(0, i);
  for (int i = 7; i <= 11; ++i) edges.emplace_back(6, i);
  edges.emplace_back(0, 6);
  auto two = Graph::from_edges(12, edges);
  auto ft = build_layered_family(two, make_ordered_partition(two, {{1, 2, 3, 4, 5, 7, 8, 9, 10, 11}, {0}, {6}}));
  TreeDecompositionOptions opts;
  opts.pad_cap = 1;
  auto t3 = build_tree_decomposition(two, ft, {}, opts);
  auto r3 = validate_tree_decomposition(two, t3, &ft);
  CHECK_MESSAGE(r3.ok, r3.message);
}

TEST_CASE("tree decompositions on random graphs") {
  std::mt19937_64 rng(67);
  for (int it = 0; it < 25; ++it) {
    int n = 4 + static_cast<int>(rng() % 27);
    auto g = connected_gnp_graph(n, 1.8 / n, 2000 + it);
    auto fam = degeneracy_family(g);
    auto td = build_tree_decomposition(g, fam, {});
    auto r = validate_tree_decomposition(g, td, &fam);
    CHECK_MESSAGE(r.ok, r.message);
    for (const auto& node : td.nodes) CHECK(static_cast<int>(node.witnesses.size()) <= td.ledger.max_witnesses);
  }
}

TEST_CASE("tree decomposition validator") {
  auto p3 = path_graph(3);
  TreeDecomposition single;
  single.nodes = {{0, -1, {}, {0, 1, 2}}};
  CHECK(validate_tree_decomposition(p3, single).ok);

  TreeDecomposition missing_edge;
  missing_edge.nodes = {{0, -1, {}, {0, 2}}, {1, 0, {}, {1}}};
  auto r = validate_tree_decomposition(p3, missing_edge);
  CHECK(r.violation == 2);

  // Vertex 1 lies in nodes 1 and 2 but not in their connecting node 0.
  auto p4 = path_graph(4);
  TreeDecomposition split;
  split.nodes = {{0, -1, {}, {2, 3}}, {1, 0, {}, {0, 1}}, {2, 0, {}, {1, 2}}};
  CHECK(validate_tree_decomposition(p4, split).violation == 3);

  TreeDecomposition uncovered;
  uncovered.nodes = {{0, -1, {}, {0, 1}}};
  CHECK(validate_tree_decomposition(p3, uncovered).violation == 1);

  auto fp = build_layered_family(p3, single_part(p3));
  TreeDecomposition wrong_witness;
  wrong_witness.nodes = {{0, -1, {0}, {0, 1, 2}}};
  CHECK(validate_tree_decomposition(p3, wrong_witness, &fp).violation == 4);
}

TEST_CASE("coverability") {
  auto p7 = path_graph(7);
  auto e = coverability(p7, {}, 1, 4);
  REQUIRE(e.centers.has_value());
  CHECK(e.centers->empty());
  auto ball = coverability(p7, {0, 1, 2, 3, 4, 5, 6}, 1, 4);
  REQUIRE(ball.centers.has_value());
  CHECK(*ball.centers == VertexSet{3});
  auto far = two_balls_graph(2, 6);
  VertexSet all(far.g.num_vertices());
  for (Vertex v = 0; v < far.g.num_vertices(); ++v) all[v] = v;
  auto none = coverability(far.g, all, 1, 4);
  CHECK(none.exact);
  CHECK_FALSE(none.centers.has_value());

  std::mt19937_64 rng(71);
  for (int it = 0; it < 40; ++it) {
    int n = 3 + static_cast<int>(rng() % 12);
    auto g = connected_gnp_graph(n, 0.15, 2100 + it);
    auto s = oracle::random_subset(n, 0.5, rng);
    int r = 2 + static_cast<int>(rng() % 3);
    auto res = coverability(g, s, 2, r);
    // Oracle: all pairs of centers.
    bool exists = false;
    std::vector<std::vector<int>> d(n);
    for (Vertex v = 0; v < n; ++v) d[v] = hop_distances(g, std::vector<Vertex>{v});
    for (Vertex c1 = 0; c1 < n && !exists; ++c1)
      for (Vertex c2 = c1; c2 < n && !exists; ++c2) {
        bool ok = true;
        for (Vertex v : s)
          if (d[c1][v] + 1 > r && d[c2][v] + 1 > r) ok = false;
        exists = ok;
      }
    CHECK(res.exact);
    CHECK(res.centers.has_value() == exists);
    if (res.centers) CHECK(covered_within(g, s, *res.centers, r));
  }
}

TEST_CASE("distance independence") {
  auto p5 = path_graph(5);
  CHECK(distance_r_independence(p5, {2}, 3).size == 1);
  auto ends = distance_r_independence(p5, {0, 4}, 3);
  CHECK(ends.size == 2);
  CHECK(ends.witness == VertexSet{0, 4});
  CHECK(distance_r_independence(p5, {0, 4}, 4).size == 1);
  CHECK(distance_r_independence(complete_graph(6), {0, 1, 2, 3, 4, 5}, 1).size == 1);

  std::mt19937_64 rng(73);
  for (int it = 0; it < 40; ++it) {
    int n = 3 + static_cast<int>(rng() % 16);
    auto g = gnp_graph(n, 0.15, 2200 + it);
    auto s = oracle::random_subset(n, 0.6, rng);
    int r = 1 + static_cast<int>(rng() % 3);
    std::vector<std::vector<int>> d(n);
    for (Vertex v = 0; v < n; ++v) d[v] = hop_distances(g, std::vector<Vertex>{v});
    int want = oracle::max_independent(s, [&](Vertex u, Vertex v) { return d[u][v] <= r; });
    auto got = distance_r_independence(g, s, r);
    CHECK(got.exact);
    CHECK(got.size == want);
    CHECK(static_cast<int>(got.witness.size()) == got.size);
    // An independent set at distance 2r is no larger than any r-cover.
    auto cov = coverability(g, s, n, r + 1);
    auto far = distance_r_independence(g, s, 2 * r);
    if (cov.centers) CHECK(far.size <= static_cast<int>(cov.centers->size()));
  }
}

TEST_CASE("treewidth pipeline") {
  auto grid = grid_graph(5, 5);
  auto res = coarse_treewidth_pipeline(grid, 2);
  auto r = validate_tree_decomposition(grid, res.td);
  CHECK_MESSAGE(r.ok, r.message);
  for (const auto& q : res.quality) {
    CHECK(q.cover_verified);
    if (q.alpha) CHECK(q.alpha->size <= q.witness_count);
  }

  auto tree = path_graph(30);
  auto rt = coarse_treewidth_pipeline(tree, 2);
  CHECK(validate_tree_decomposition(tree, rt.td).ok);

  Graph one(1);
  auto r1 = coarse_treewidth_pipeline(one, 2);
  REQUIRE(r1.td.nodes.size() == 1);
  CHECK(r1.td.nodes[0].bag == VertexSet{0});
}

TEST_CASE("helpers") {
  CHECK(ceil_log2(1.0) == 0);
  CHECK(ceil_log2(2.0) == 1);
  CHECK(ceil_log2(5.0) == 3);
  auto rp = greedy_four_radius_partition(path_graph(7));
  auto blocks = partition_blocks(rp);
  REQUIRE(blocks.size() == 1);
  CHECK(block_representatives(rp) == std::vector<Vertex>{3});
}
