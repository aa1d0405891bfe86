#include <doctest.h>

#include <random>

#include "coarse/errors.hpp"
#include "coarse/generators.hpp"
#include "coarse/graph.hpp"
#include "coarse/minor.hpp"
#include "support/oracles.hpp"

using namespace coarse;

TEST_CASE("edge list parsing") {
  auto g = parse_edge_list("0 1\n1 2");
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
  CHECK_THROWS_AS(parse_edge_list("0 1\n0 1"), ValidationError);
  auto h = parse_edge_list("# n=4\n0 1");
  CHECK(h.num_vertices() == 4);
  CHECK(h.degree(2) == 0);
  CHECK(h.degree(3) == 0);
  CHECK_THROWS_AS(parse_edge_list("0 0"), ValidationError);
  try {
    parse_edge_list("0 1\n1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK(parse_edge_list(write_edge_list(grid_graph(3, 3))).edges() == grid_graph(3, 3).edges());
}

TEST_CASE("induced subgraphs") {
  auto c4 = cycle_graph(4);
  auto p3 = induced_subgraph(c4, {0, 1, 2});
  CHECK(p3.num_edges() == 2);
  CHECK(p3.labels() == std::vector<Vertex>{0, 1, 2});
  auto same = induced_subgraph(c4, {0, 1, 2, 3});
  CHECK(same.edges() == c4.edges());
  auto k4 = complete_graph(4);
  CHECK(induced_subgraph(k4, {1, 3}).num_edges() == 1);
  CHECK_THROWS_AS(induced_subgraph(k4, {1, 7}), ValidationError);
}

TEST_CASE("quotients") {
  auto p4 = path_graph(4);
  auto [q, m] = quotient_by_components(p4, {{0, 1}, {2, 3}});
  CHECK(q.num_vertices() == 2);
  CHECK(q.num_edges() == 1);
  CHECK(m.block_of == std::vector<int>{0, 0, 1, 1});
  auto [q2, m2] = quotient_by_components(p4, {{0}, {1}, {2}, {3}});
  CHECK(q2.edges() == p4.edges());
  auto [q3, m3] = quotient_by_components(cycle_graph(4), {{0, 1}, {2, 3}});
  CHECK(q3.num_edges() == 1);
  CHECK_THROWS_AS(quotient_by_components(p4, {{0, 2}, {1, 3}}), ValidationError);
  CHECK_THROWS_AS(quotient_by_components(p4, {{0, 1}, {1, 2, 3}}), ValidationError);
  CHECK_THROWS_AS(quotient_by_components(p4, {{0, 1}, {2}}), ValidationError);
}

TEST_CASE("lifting quotient paths gives connected sets with a path between the lifted ends") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    int n = 5 + static_cast<int>(rng() % 26);
    auto g = connected_gnp_graph(n, 0.12, it);
    // Parts: connected blobs grown by BFS from random seeds.
    std::vector<int> owner(n, -1);
    std::vector<VertexSet> parts;
    for (Vertex s = 0; s < n; ++s) {
      if (owner[s] >= 0) continue;
      int id = static_cast<int>(parts.size());
      VertexSet part{s};
      owner[s] = id;
      int want = 1 + static_cast<int>(rng() % 4);
      for (std::size_t i = 0; i < part.size() && static_cast<int>(part.size()) < want; ++i)
        for (Vertex w : g.neighbors(part[i]))
          if (owner[w] < 0 && static_cast<int>(part.size()) < want) {
            owner[w] = id;
            part.push_back(w);
          }
      parts.push_back(make_set(part));
    }
    auto [q, m] = quotient_by_components(g, parts);
    Vertex x = 0, y = q.num_vertices() - 1;
    auto qp = shortest_path_within(q, {x}, {y}, std::vector<char>(q.num_vertices(), 1));
    REQUIRE(!qp.empty());
    VertexSet lifted;
    for (Vertex b : qp) lifted = set_union(lifted, m.blocks[b]);
    CHECK(is_connected_set(g, lifted));
    auto p = shortest_path_within(g, m.blocks[x], m.blocks[y], membership(n, lifted));
    CHECK(!p.empty());
    CHECK(is_path(g, p));
  }
}

TEST_CASE("components and hop distances") {
  auto g = parse_edge_list("# n=4\n0 1\n1 2");
  auto comps = connected_components(g);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == VertexSet{0, 1, 2});
  CHECK(comps[1] == VertexSet{3});
  CHECK(connected_components(grid_graph(3, 3)).size() == 1);
  CHECK(connected_components(Graph(3)).size() == 3);
  auto p4 = path_graph(4);
  CHECK(hop_distances(p4, std::vector<Vertex>{0}) == std::vector<int>{0, 1, 2, 3});
  CHECK(hop_distances(p4, std::vector<Vertex>{0, 1, 2, 3}) == std::vector<int>{0, 0, 0, 0});
  CHECK(hop_distances(g, std::vector<Vertex>{0})[3] == kUnreachable);
}

TEST_CASE("induced path enumeration examples") {
  CHECK(enumerate_induced_paths(path_graph(4), {0}, {3}, 100).paths.size() == 1);
  CHECK(enumerate_induced_paths(cycle_graph(4), {0}, {2}, 100).paths.size() == 2);
  auto k4 = enumerate_induced_paths(complete_graph(4), {0}, {1}, 100);
  REQUIRE(k4.paths.size() == 1);
  CHECK(k4.paths[0] == Path{0, 1});
  auto capped = enumerate_induced_paths(cycle_graph(4), {0}, {2}, 1);
  CHECK(capped.overflow);
}

TEST_CASE("induced path enumeration matches the naive filter") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 150; ++it) {
    int n = 2 + static_cast<int>(rng() % 9);
    auto g = gnp_graph(n, 0.35, it);
    auto a = oracle::random_subset(n, 0.25, rng);
    auto b = oracle::random_subset(n, 0.25, rng);
    if (a.empty() || b.empty()) continue;
    auto ps = enumerate_induced_paths(g, a, b, 1'000'000);
    REQUIRE(!ps.overflow);
    auto got = ps.paths;
    std::sort(got.begin(), got.end());
    CHECK(got == oracle::naive_induced_paths(g, a, b));
    for (const auto& p : got) CHECK(is_induced_path(g, p));
  }
}

TEST_CASE("induced path from a walk") {
  auto p3 = path_graph(3);
  CHECK(extract_induced_path_from_walk(p3, std::vector<Vertex>{0, 1, 0, 1, 2}) == Path{0, 1, 2});
  auto p5 = path_graph(5);
  CHECK(extract_induced_path_from_walk(p5, std::vector<Vertex>{1, 2, 3}) == Path{1, 2, 3});
  auto c4 = cycle_graph(4);
  CHECK(extract_induced_path_from_walk(c4, std::vector<Vertex>{0, 1, 2, 3, 0, 3, 2}) == Path{0, 1, 2});

  std::mt19937_64 rng(9);
  for (int it = 0; it < 100; ++it) {
    int n = 3 + static_cast<int>(rng() % 8);
    auto g = connected_gnp_graph(n, 0.3, 100 + it);
    std::vector<Vertex> walk{static_cast<Vertex>(rng() % n)};
    int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i) {
      auto nb = g.neighbors(walk.back());
      walk.push_back(nb[rng() % nb.size()]);
    }
    auto p = extract_induced_path_from_walk(g, walk);
    CHECK(is_induced_path(g, p));
    CHECK(p.front() == walk.front());
    CHECK(p.back() == walk.back());
    // No shorter induced path within the walk's vertex set.
    VertexSet ws = make_set(walk);
    auto h = induced_subgraph(g, ws);
    auto pos = [&](Vertex v) { return static_cast<Vertex>(std::lower_bound(ws.begin(), ws.end(), v) - ws.begin()); };
    auto all = oracle::naive_induced_paths(h, {pos(walk.front())}, {pos(walk.back())});
    std::size_t best = all.empty() ? 1 : all.front().size();
    for (const auto& q : all) best = std::min(best, q.size());
    if (walk.front() != walk.back()) CHECK(p.size() == best);
  }
}

TEST_CASE("anticomplete sets") {
  auto p4 = path_graph(4);
  CHECK(is_anticomplete(p4, {0}, {3}));
  CHECK_FALSE(is_anticomplete(p4, {0}, {1}));
  CHECK_FALSE(is_anticomplete(p4, {0, 2}, {2}));
}

TEST_CASE("induced K_tt minor oracle") {
  auto r = detect_ktt_induced_minor(complete_bipartite(2, 2), 2, 1'000'000);
  REQUIRE(r.verdict == SearchVerdict::found);
  CHECK(verify_minor_model(complete_bipartite(2, 2), *r.model, 2));
  CHECK(detect_ktt_induced_minor(path_graph(5), 2, 1'000'000).verdict == SearchVerdict::absent);
  CHECK(detect_ktt_induced_minor(star_graph(5), 2, 1'000'000).verdict == SearchVerdict::absent);
  CHECK(detect_ktt_induced_minor(grid_graph(3, 3), 2, 1).verdict == SearchVerdict::inconclusive);
}

TEST_CASE("minor model verifier") {
  auto g = complete_bipartite(2, 2);  // sides {0,1} and {2,3}
  MinorModel ok{2, {{0}, {1}}, {{2}, {3}}};
  CHECK(verify_minor_model(g, ok, 2));
  auto p = path_graph(5);
  MinorModel split{1, {{0, 2}}, {{1}}};
  std::string why;
  CHECK_FALSE(verify_minor_model(p, split, 1, &why));
  CHECK(!why.empty());
  MinorModel missing{2, {{0}, {2}}, {{1}, {3}}};
  CHECK_FALSE(verify_minor_model(g, missing, 2));
}
