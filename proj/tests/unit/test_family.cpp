#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/generators.hpp"
#include "support/oracles.hpp"

using namespace coarse;

namespace {

OrderedPartition single_part(const Graph& g) {
  VertexSet all(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) all[v] = v;
  return make_ordered_partition(g, {all});
}

}  // namespace

TEST_CASE("degeneracy and layering") {
  CHECK(degeneracy(path_graph(4)) == 1);
  CHECK(degeneracy(complete_graph(5)) == 4);
  CHECK(degeneracy(Graph(3)) == 0);

  auto p4 = degeneracy_layering(path_graph(4), 1);
  REQUIRE(p4.parts.size() == 1);
  CHECK(p4.parts[0].size() == 4);

  auto star = degeneracy_layering(star_graph(7), 1);
  REQUIRE(star.parts.size() == 2);
  CHECK(star.parts[0] == VertexSet{1, 2, 3, 4, 5, 6, 7});
  CHECK(star.parts[1] == VertexSet{0});

  CHECK(degeneracy_layering(Graph(4), 0).parts.size() == 1);
  CHECK_THROWS_AS(degeneracy_layering(complete_graph(5), 3), ValidationError);
}

TEST_CASE("family construction examples") {
  auto p4 = path_graph(4);
  auto f = build_layered_family(p4, single_part(p4));
  CHECK(f.num_sets() == 4);
  CHECK(f.thickness() == 1);
  for (int i = 0; i < 4; ++i) CHECK(f.members(i).size() == 1);

  auto star = star_graph(7);
  auto fs = build_layered_family(star, degeneracy_layering(star, 1));
  REQUIRE(fs.num_sets() == 1);
  CHECK(fs.center(0) == 0);
  CHECK(fs.members(0).size() == 8);
  CHECK(fs.thickness() == 2);

  Graph empty(3);
  auto fe = build_layered_family(empty, make_ordered_partition(empty, {{0, 1}, {2}}));
  CHECK(fe.num_sets() == 3);
  CHECK(fe.thickness() == 1);
}

TEST_CASE("family matches transitive closure of the arc relation") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    int n = 1 + static_cast<int>(rng() % 25);
    auto g = gnp_graph(n, 0.2, it);
    int k = 1 + static_cast<int>(rng() % 4);
    auto labels = oracle::random_parts(n, k, rng);
    auto fam = build_layered_family(g, make_ordered_partition(g, oracle::parts_from_labels(labels)));
    CHECK(fam.sets() == oracle::naive_family(g, fam.partition().part_of));
    for (int s = 0; s < fam.num_sets(); ++s) {
      CHECK(downward_closure(fam, fam.members(s)) == fam.members(s));
      std::set<int> parts_met;
      for (Vertex v : fam.members(s)) parts_met.insert(fam.partition().part_of[v]);
      CHECK(static_cast<int>(parts_met.size()) <= fam.thickness());
    }
  }
}

TEST_CASE("witnessing") {
  auto p4 = path_graph(4);
  auto f = build_layered_family(p4, single_part(p4));
  auto r = verify_witnessing(p4, f, 4);
  CHECK(r.ok);
  CHECK(r.worst_excess <= 2);
  CHECK_FALSE(verify_witnessing(p4, f, 0).ok);
  auto star = star_graph(7);
  auto fs = build_layered_family(star, degeneracy_layering(star, 1));
  auto rs = verify_witnessing(star, fs, 4);
  CHECK(rs.ok);
  CHECK(rs.worst_excess == 0);
}

TEST_CASE("degeneracy families: thickness and witnessing on random graphs") {
  for (int it = 0; it < 30; ++it) {
    int n = 10 + it * 7;
    auto g = gnp_graph(n, 3.0 / n, 50 + it);
    int d = degeneracy(g);
    auto fam = build_layered_family(g, degeneracy_layering(g, d));
    CHECK(fam.thickness() <= std::max(1, static_cast<int>(std::ceil(std::log2(n)))));
    CHECK(verify_witnessing(g, fam, 4 * d).ok);
  }
}

TEST_CASE("ancestral paths") {
  auto star = star_graph(7);
  auto fs = build_layered_family(star, degeneracy_layering(star, 1));
  CHECK(ancestral_path(star, fs, 0, 3, 3) == Path{3});
  CHECK(ancestral_path(star, fs, 0, 2, 5) == Path{2, 0, 5});
  CHECK(ancestral_path(star, fs, 0, 0, 4).size() <= 2);
  auto p4 = path_graph(4);
  auto f = build_layered_family(p4, single_part(p4));
  CHECK_THROWS_AS(ancestral_path(p4, f, 0, 0, 1), ValidationError);

  std::mt19937_64 rng(21);
  for (int it = 0; it < 40; ++it) {
    int n = 2 + static_cast<int>(rng() % 19);
    auto g = gnp_graph(n, 0.3, 200 + it);
    auto labels = oracle::random_parts(n, 1 + static_cast<int>(rng() % 4), rng);
    auto fam = build_layered_family(g, make_ordered_partition(g, oracle::parts_from_labels(labels)));
    for (int s = 0; s < fam.num_sets(); ++s)
      for (Vertex u : fam.members(s))
        for (Vertex v : fam.members(s)) {
          auto p = ancestral_path(g, fam, s, u, v);
          REQUIRE(!p.empty());
          CHECK(p.front() == u);
          CHECK(p.back() == v);
          CHECK(is_path(g, p));
          CHECK(static_cast<int>(p.size()) <= 2 * fam.thickness() - 1);
          auto anc = upward_closure(fam, std::vector<Vertex>{u, v});
          for (Vertex w : p) CHECK(set_contains(anc, w));
          for (Vertex w : p) CHECK(set_contains(fam.members(s), w));
        }
  }
}

TEST_CASE("closures") {
  auto star = star_graph(7);
  auto fs = build_layered_family(star, degeneracy_layering(star, 1));
  CHECK(upward_closure(fs, std::vector<Vertex>{}).empty());
  CHECK(downward_closure(fs, std::vector<Vertex>{}).empty());
  CHECK(downward_closure(fs, fs.centers()).size() == 8);
  CHECK(upward_closure(fs, std::vector<Vertex>{3}) == VertexSet{0, 3});
  auto p4 = path_graph(4);
  auto f = build_layered_family(p4, single_part(p4));
  CHECK(upward_closure(f, std::vector<Vertex>{1, 2}) == VertexSet{1, 2});
  CHECK(downward_closure(f, std::vector<Vertex>{1, 2}) == VertexSet{1, 2});
  auto up = upward_closure(fs, std::vector<Vertex>{3});
  CHECK(upward_closure(fs, up) == up);
}

TEST_CASE("upward minimality") {
  auto p4 = path_graph(4);
  auto f = build_layered_family(p4, single_part(p4));
  CHECK(is_upward_minimal(p4, f, {0, 1, 2, 3}, 100000).verdict == MinimalityVerdict::minimal);
  CHECK(is_upward_minimal(p4, f, {2}, 100000).verdict == MinimalityVerdict::minimal);
  auto c4 = cycle_graph(4);
  auto fc = build_layered_family(c4, single_part(c4));
  auto r = is_upward_minimal(c4, fc, {0, 3, 2, 1}, 100000);
  // 0-3-2-1 has endpoints 0 and 1: the edge 0-1 is a witness.
  REQUIRE(r.verdict == MinimalityVerdict::witness);
  CHECK(r.witness == Path{0, 1});
  auto c5 = cycle_graph(5);
  // 1 sits above its neighbours, so it is an ancestor of 0 and 2.
  auto f5 = build_layered_family(c5, make_ordered_partition(c5, {{0, 2, 3, 4}, {1}}));
  auto r5 = is_upward_minimal(c5, f5, {0, 4, 3, 2}, 100000);
  REQUIRE(r5.verdict == MinimalityVerdict::witness);
  CHECK(r5.witness == Path{0, 1, 2});
}

TEST_CASE("minimal paths meet every set in at most 2k-1 vertices") {
  std::mt19937_64 rng(77);
  int checked = 0;
  for (int it = 0; it < 40; ++it) {
    int n = 3 + static_cast<int>(rng() % 10);
    auto g = connected_gnp_graph(n, 0.25, 300 + it);
    auto labels = oracle::random_parts(n, 1 + static_cast<int>(rng() % 3), rng);
    auto fam = build_layered_family(g, make_ordered_partition(g, oracle::parts_from_labels(labels)));
    auto paths = enumerate_induced_paths(g, {0}, {n - 1}, 5000);
    for (const auto& p : paths.paths) {
      auto m = is_upward_minimal(g, fam, p, 100000);
      if (m.verdict != MinimalityVerdict::minimal) continue;
      ++checked;
      for (const auto& s : fam.sets()) {
        int meet = 0;
        for (Vertex v : p) meet += set_contains(s, v) ? 1 : 0;
        CHECK(meet <= 2 * fam.thickness() - 1);
      }
    }
  }
  CHECK(checked > 0);
}
