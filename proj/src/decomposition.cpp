#include "coarse/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "coarse/errors.hpp"

namespace coarse {

std::string to_string(BranchOverride b) {
  switch (b) {
    case BranchOverride::automatic: return "auto";
    case BranchOverride::rounding: return "rounding";
    case BranchOverride::sampling: return "sampling";
  }
  return "auto";
}

BranchOverride parse_branch(const std::string& s) {
  if (s == "auto") return BranchOverride::automatic;
  if (s == "rounding" || s == "separator") return BranchOverride::rounding;
  if (s == "sampling" || s == "packing") return BranchOverride::sampling;
  throw ValidationError("unknown branch '" + s + "'");
}

int ceil_log2(double x) {
  if (x <= 1.0) return 0;
  return static_cast<int>(std::ceil(std::log2(x) - 1e-12));
}

CenterSeparator balanced_center_separator(const Graph& g, const LayeredFamily& fam, const VertexSet& xs,
                                          const CenterSeparatorOptions& opts) {
  for (Vertex x : xs) {
    require(g.contains(x), "X vertex out of range");
    require(fam.set_of_center(x) >= 0, "X must consist of centers of the family");
  }
  CenterSeparator out;
  int n = g.num_vertices();
  int k = fam.thickness();
  auto sol = solve_balanced_lp_auto(g, fam, xs, opts.lp);
  ensure(sol.status == LpStatus::optimal, "balanced LP did not reach optimality");
  double f = sol.objective;
  out.lp_objective = f;
  out.f_threshold = opts.f_threshold.value_or(f + 1.0);
  out.claimed_bound = 5000.0 * k * std::pow(std::log2(2.0 * std::max(1, n)), 2) * f *
                      std::log2(4.0 * std::max(f, 1.0));

  bool sample = opts.branch == BranchOverride::sampling ||
                (opts.branch == BranchOverride::automatic && f > out.f_threshold);
  if (sample) {
    out.rounded = false;
    require(f > 0.0, "sampling branch needs a positive LP optimum");
    int ell = dense_subgraph_min_ell(f, n, static_cast<int>(xs.size()));
    auto sub = sample_dense_subgraph(g, fam, sol, ell, opts.seed);
    if (sub.accepted) {
      out.h_max_degree = sub.h.max_degree();
      out.h_degeneracy = degeneracy(sub.h);
    }
    out.sampled = std::move(sub);
    return out;
  }

  if (f <= 0.0) {
    // Every vertex of X already sees a tenth of X outside its component.
    out.balanced = is_balanced_separator(g, xs, {}, 0.95);
    ensure(out.balanced, "zero LP optimum but the empty set is not balanced");
    out.cert.kind = "balanced";
    out.cert.x_set = xs;
    return out;
  }
  out.cert = round_balanced_separator(g, fam, sol, opts.lp);
  auto cover = greedy_cover(fam, out.cert.separator);
  out.centers = cover.centers;
  VertexSet expanded;
  for (int i : cover.sets) expanded = set_union(expanded, fam.members(i));
  out.expanded = expanded;
  out.balanced = is_balanced_separator(g, xs, expanded, 0.95);
  ensure(out.balanced, "expanded separator is not balanced");
  return out;
}

namespace {

std::string theoretical_pad_cap(int k, int n, double f) {
  if (f <= 0.0) return "0";
  double v = 110000.0 * k * std::pow(std::log2(2.0 * n), 2) * f * std::log2(4.0 * f);
  std::ostringstream os;
  os.precision(6);
  os << std::floor(std::max(0.0, v));
  return os.str();
}

struct TdBuilder {
  const Graph& root_graph;
  const TreeDecompositionOptions& opts;
  int pad_cap = 0;
  TreeDecomposition td;

  VertexSet to_root(const std::vector<Vertex>& map, const VertexSet& s) const {
    VertexSet o;
    for (Vertex v : s) o.push_back(map[v]);
    return make_set(std::move(o));
  }

  int add_node(int parent, VertexSet witnesses, VertexSet bag) {
    TdNode node;
    node.id = static_cast<int>(td.nodes.size());
    node.parent = parent;
    node.witnesses = std::move(witnesses);
    node.bag = std::move(bag);
    td.ledger.max_witnesses = std::max(td.ledger.max_witnesses, static_cast<int>(node.witnesses.size()));
    td.nodes.push_back(std::move(node));
    return td.nodes.back().id;
  }

  // gc: current subgraph, map: its vertices -> ids of the root graph; xs in ids of gc.
  void build(const Graph& gc, const std::vector<Vertex>& map, const LayeredFamily& famc,
             const VertexSet& xs, int parent) {
    int n = gc.num_vertices();
    const auto& centers = famc.centers();
    VertexSet y = xs;
    int target = std::max(static_cast<int>(xs.size()), std::min(pad_cap, static_cast<int>(centers.size())));
    for (Vertex w : centers) {
      if (static_cast<int>(y.size()) >= target) break;
      if (!set_contains(xs, w)) y = set_union(y, {w});
    }
    auto leaf = [&] {
      VertexSet all(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) all[v] = v;
      add_node(parent, to_root(map, centers), to_root(map, all));
    };
    if (y.size() >= centers.size()) {
      leaf();
      return;
    }

    auto sep = balanced_center_separator(gc, famc, y, opts.separator);
    require(sep.rounded, "tree decomposition needs the rounding branch");
    td.ledger.lp_objectives.push_back(sep.lp_objective);
    td.ledger.max_separator = std::max(td.ledger.max_separator, static_cast<int>(sep.centers.size()));
    VertexSet witnesses = set_union(xs, sep.centers);
    if (witnesses.size() >= centers.size()) {
      leaf();
      return;
    }
    const VertexSet& shat = sep.expanded;
    auto comps = components_without(gc, membership(n, shat));
    bool shrinks = std::all_of(comps.begin(), comps.end(),
                               [&](const VertexSet& c) { return c.size() + shat.size() < static_cast<std::size_t>(n); });
    if (!shrinks) {
      ++td.ledger.leaf_fallbacks;
      leaf();
      return;
    }
    VertexSet bag;
    for (Vertex w : witnesses) bag = set_union(bag, famc.members(famc.set_of_center(w)));
    int id = add_node(parent, to_root(map, witnesses), to_root(map, bag));

    for (const auto& comp : comps) {
      VertexSet keep = set_union(comp, shat);
      Graph h = induced_subgraph(gc, keep);
      auto famh = build_layered_family(h, restrict_partition(famc.partition(), h));
      // The restricted family must be {F_w : w in S or a center in C}.
      VertexSet expect = set_union(sep.centers, set_intersection(centers, comp));
      VertexSet got;
      for (Vertex w : famh.centers()) got.push_back(h.label(w));
      ensure(make_set(got) == expect, "restricted family has unexpected centers");
      for (int i = 0; i < famh.num_sets(); ++i) {
        VertexSet lifted;
        for (Vertex v : famh.members(i)) lifted.push_back(h.label(v));
        ensure(make_set(lifted) == famc.members(famc.set_of_center(h.label(famh.center(i)))),
               "restricted family set differs from the original set");
      }
      std::vector<Vertex> pos(static_cast<std::size_t>(n), -1);
      for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<Vertex>(i);
      VertexSet xh;
      for (Vertex w : set_union(sep.centers, set_intersection(xs, comp))) xh.push_back(pos[w]);
      std::vector<Vertex> maph;
      for (Vertex v : keep) maph.push_back(map[v]);
      build(h, maph, famh, make_set(std::move(xh)), id);
    }
  }
};

}  // namespace

TreeDecomposition build_tree_decomposition(const Graph& g, const LayeredFamily& fam, const VertexSet& x0,
                                           const TreeDecompositionOptions& opts) {
  for (Vertex x : x0) {
    require(g.contains(x), "X0 vertex out of range");
    require(fam.set_of_center(x) >= 0, "X0 must consist of centers");
  }
  TdBuilder b{g, opts, 0, {}};
  int m = static_cast<int>(fam.centers().size());
  b.pad_cap = opts.pad_cap.value_or((m + 3) / 4);
  require(b.pad_cap >= 1, "pad cap must be positive");
  b.td.ledger.pad_cap = b.pad_cap;
  b.td.ledger.x0_size = static_cast<int>(x0.size());
  if (g.num_vertices() == 0) return b.td;
  std::vector<Vertex> map(static_cast<std::size_t>(g.num_vertices()));
  for (int v = 0; v < g.num_vertices(); ++v) map[v] = v;
  b.build(g, map, fam, x0, -1);
  double f0 = b.td.ledger.lp_objectives.empty() ? 0.0 : b.td.ledger.lp_objectives.front();
  b.td.ledger.theoretical_pad_cap = theoretical_pad_cap(fam.thickness(), g.num_vertices(), f0);
  b.td.root = 0;
  return b.td;
}

TdReport validate_tree_decomposition(const Graph& g, const TreeDecomposition& td, const LayeredFamily* fam) {
  TdReport rep;
  auto fail = [&](int code, std::string msg) {
    rep.ok = false;
    rep.violation = code;
    rep.message = std::move(msg);
    return rep;
  };
  int n = g.num_vertices();
  int m = static_cast<int>(td.nodes.size());
  if (m == 0) return n == 0 ? rep : fail(1, "no nodes");
  for (int i = 0; i < m; ++i) {
    const auto& nd = td.nodes[i];
    if (nd.id != i) return fail(5, "node ids are not 0..m-1");
    if ((i == td.root) != (nd.parent < 0)) return fail(5, "exactly the root must lack a parent");
    if (nd.parent >= m) return fail(5, "parent out of range");
    for (Vertex v : nd.bag)
      if (!g.contains(v)) return fail(1, "bag vertex out of range");
  }
  // Parent pointers must reach the root without cycles.
  for (int i = 0; i < m; ++i) {
    int cur = i, steps = 0;
    while (td.nodes[cur].parent >= 0 && steps <= m) {
      cur = td.nodes[cur].parent;
      ++steps;
    }
    if (cur != td.root) return fail(5, "node " + std::to_string(i) + " does not reach the root");
  }
  std::vector<std::vector<int>> holds(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i)
    for (Vertex v : td.nodes[i].bag) holds[v].push_back(i);
  for (Vertex v = 0; v < n; ++v)
    if (holds[v].empty()) return fail(1, "vertex " + std::to_string(v) + " is in no bag");
  for (auto [u, v] : g.edges()) {
    bool found = std::any_of(holds[u].begin(), holds[u].end(), [&](int i) {
      return set_contains(td.nodes[i].bag, v);
    });
    if (!found)
      return fail(2, "edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag");
  }
  for (Vertex v = 0; v < n; ++v) {
    // The nodes holding v induce a subtree iff exactly one of them has its parent outside.
    std::vector<char> in(static_cast<std::size_t>(m), 0);
    for (int i : holds[v]) in[i] = 1;
    int tops = 0;
    for (int i : holds[v])
      if (td.nodes[i].parent < 0 || !in[td.nodes[i].parent]) ++tops;
    if (tops != 1)
      return fail(3, "nodes holding vertex " + std::to_string(v) + " are not connected");
  }
  if (fam) {
    for (const auto& nd : td.nodes) {
      VertexSet u;
      for (Vertex w : nd.witnesses) {
        int s = fam->set_of_center(w);
        if (s < 0) return fail(4, "witness " + std::to_string(w) + " is not a center");
        u = set_union(u, fam->members(s));
      }
      if (u != nd.bag) return fail(4, "bag of node " + std::to_string(nd.id) + " is not the union of its witness sets");
    }
  }
  return rep;
}

CoverabilityResult coverability(const Graph& g, const VertexSet& s, int k, int r_vertices, int exact_limit) {
  CoverabilityResult out;
  int n = g.num_vertices();
  out.exact = n <= exact_limit;
  if (s.empty()) {
    out.centers = VertexSet{};
    return out;
  }
  if (k <= 0 || r_vertices <= 0) return out;
  // reach[c] = vertices of S within r - 1 edges of c.
  std::vector<boost::dynamic_bitset<>> reach;
  VertexSet cand;
  for (Vertex c = 0; c < n; ++c) {
    auto dist = hop_distances(g, std::span<const Vertex>(&c, 1));
    boost::dynamic_bitset<> bits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      if (dist[s[i]] != kUnreachable && dist[s[i]] <= r_vertices - 1) bits.set(i);
    if (bits.any()) {
      cand.push_back(c);
      reach.push_back(std::move(bits));
    }
  }
  int m = static_cast<int>(cand.size());
  if (out.exact) {
    VertexSet chosen;
    std::function<bool(boost::dynamic_bitset<>)> go = [&](boost::dynamic_bitset<> covered) {
      if (covered.all()) return true;
      if (static_cast<int>(chosen.size()) == k) return false;
      // Branch on the candidates covering the first uncovered vertex.
      std::size_t miss = 0;
      while (covered.test(miss)) ++miss;
      for (int i = 0; i < m; ++i) {
        if (!reach[i].test(miss)) continue;
        chosen.push_back(cand[i]);
        if (go(covered | reach[i])) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (go(boost::dynamic_bitset<>(s.size()))) out.centers = make_set(chosen);
    return out;
  }
  boost::dynamic_bitset<> covered(s.size());
  VertexSet chosen;
  while (!covered.all() && static_cast<int>(chosen.size()) < k) {
    int best = -1;
    std::size_t gain = 0;
    for (int i = 0; i < m; ++i) {
      std::size_t got = (reach[i] - covered).count();
      if (got > gain) {
        gain = got;
        best = i;
      }
    }
    if (best < 0) break;
    covered |= reach[best];
    chosen.push_back(cand[best]);
  }
  if (covered.all()) out.centers = make_set(chosen);
  return out;
}

IndependenceResult distance_r_independence(const Graph& g, const VertexSet& s, int r_edges,
                                           std::uint64_t budget) {
  check_vertices(g, s, "S");
  IndependenceResult out;
  int q = static_cast<int>(s.size());
  if (q == 0) return out;
  using Bits = boost::dynamic_bitset<>;
  std::vector<Bits> conflict(static_cast<std::size_t>(q), Bits(q));
  for (int i = 0; i < q; ++i) {
    auto dist = hop_distances(g, std::span<const Vertex>(&s[i], 1));
    for (int j = 0; j < q; ++j)
      if (j != i && dist[s[j]] != kUnreachable && dist[s[j]] <= r_edges) conflict[i].set(j);
  }
  std::uint64_t nodes = 0;
  std::vector<int> cur, best;
  std::function<void(Bits)> go = [&](Bits p) {
    if (++nodes > budget) {
      out.exact = false;
      return;
    }
    if (cur.size() + p.count() <= best.size()) return;
    if (p.none()) {
      best = cur;
      return;
    }
    int v = -1;
    std::size_t low = 0;
    for (auto i = p.find_first(); i != Bits::npos; i = p.find_next(i)) {
      std::size_t deg = (conflict[i] & p).count();
      if (v < 0 || deg < low) {
        v = static_cast<int>(i);
        low = deg;
      }
    }
    // Some maximum independent set meets N[v]; a vertex of degree <= 1 can always be taken.
    Bits branch = conflict[v] & p;
    branch.set(v);
    if (low <= 1) {
      branch.reset();
      branch.set(v);
    }
    for (auto u = branch.find_first(); u != Bits::npos; u = branch.find_next(u)) {
      Bits rest = p & ~conflict[u];
      rest.reset(u);
      cur.push_back(static_cast<int>(u));
      go(rest);
      cur.pop_back();
      if (!out.exact) return;
    }
  };
  Bits all(q);
  all.set();
  go(all);
  if (!out.exact && best.empty()) {
    // Greedy lower bound.
    Bits p = all;
    best.clear();
    for (int i = 0; i < q; ++i)
      if (p.test(i)) {
        best.push_back(i);
        p &= ~conflict[i];
      }
  }
  for (int i : best) out.witness.push_back(s[i]);
  out.witness = make_set(out.witness);
  out.size = static_cast<int>(out.witness.size());
  return out;
}

std::vector<VertexSet> partition_blocks(const RadiusPartition& rp) {
  std::vector<VertexSet> out;
  for (const auto& w : rp.witnesses) out.push_back(w.component);
  return out;
}

std::vector<Vertex> block_representatives(const RadiusPartition& rp) {
  std::vector<Vertex> out;
  for (const auto& w : rp.witnesses)
    out.push_back(set_contains(w.component, w.center) ? w.center : w.component.front());
  return out;
}

TreewidthPipelineResult coarse_treewidth_pipeline(const Graph& g, int t, const TreewidthPipelineOptions& opts) {
  require(t >= 1, "t must be positive");
  TreewidthPipelineResult out;
  int n = g.num_vertices();
  if (n == 0) return out;
  out.partition = greedy_four_radius_partition(g);
  out.blocks = partition_blocks(out.partition);
  auto reps = block_representatives(out.partition);
  auto [q, qmap] = quotient_by_components(g, out.blocks);
  out.n_quotient = q.num_vertices();
  out.d = degeneracy(q);
  auto fam = build_layered_family(q, degeneracy_layering(q, out.d));
  out.thickness = fam.thickness();
  out.quotient_td = build_tree_decomposition(q, fam, {}, opts.td);
  auto rep = validate_tree_decomposition(q, out.quotient_td, &fam);
  ensure(rep.ok, "quotient decomposition is invalid: " + rep.message);

  out.radius_vertices = 8 * std::max(1, ceil_log2(2.0 * out.n_quotient));
  out.td.root = out.quotient_td.root;
  out.td.ledger = out.quotient_td.ledger;
  for (const auto& nd : out.quotient_td.nodes) {
    TdNode lifted;
    lifted.id = nd.id;
    lifted.parent = nd.parent;
    for (Vertex b : nd.bag) lifted.bag.insert(lifted.bag.end(), qmap.blocks[b].begin(), qmap.blocks[b].end());
    lifted.bag = make_set(std::move(lifted.bag));
    for (Vertex w : nd.witnesses) lifted.witnesses.push_back(reps[w]);
    lifted.witnesses = make_set(std::move(lifted.witnesses));
    BagQuality bq;
    bq.node = nd.id;
    bq.witness_count = static_cast<int>(nd.witnesses.size());
    bq.centers = lifted.witnesses;
    bq.radius_vertices = out.radius_vertices;
    bq.cover_verified = covered_within(g, lifted.bag, bq.centers, bq.radius_vertices);
    if (n <= opts.alpha_max_n) bq.alpha = distance_r_independence(g, lifted.bag, 2 * bq.radius_vertices);
    out.quality.push_back(std::move(bq));
    out.td.nodes.push_back(std::move(lifted));
  }
  auto lifted_rep = validate_tree_decomposition(g, out.td);
  ensure(lifted_rep.ok, "lifted decomposition is invalid: " + lifted_rep.message);
  for (const auto& bq : out.quality) ensure(bq.cover_verified, "lifted bag is not covered at the lifted radius");
  return out;
}

}  // namespace coarse
