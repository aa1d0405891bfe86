#include "coarse/menger.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/dynamic_bitset.hpp>

#include "coarse/errors.hpp"
#include "coarse/flow.hpp"

namespace coarse {

std::string to_string(MengerVerdict v) {
  switch (v) {
    case MengerVerdict::packing: return "packing";
    case MengerVerdict::separator: return "separator";
    case MengerVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

MengerResult menger_max_flow(const Graph& g, const VertexSet& a, const VertexSet& b, int k) {
  require(!a.empty() && !b.empty(), "A and B must be nonempty");
  require(k >= 0, "k must be nonnegative");
  check_vertices(g, a, "A");
  check_vertices(g, b, "B");
  int n = g.num_vertices();
  int s = 2 * n, t = 2 * n + 1;
  MaxFlow mf(2 * n + 2);
  // Only the vertex arcs can be cut.
  const int inf = n + 1;
  for (Vertex v = 0; v < n; ++v) mf.add_edge(2 * v, 2 * v + 1, 1);
  for (Vertex v : a) mf.add_edge(s, 2 * v, inf);
  for (Vertex v : b) mf.add_edge(2 * v + 1, t, inf);
  for (auto [u, v] : g.edges()) {
    mf.add_edge(2 * u + 1, 2 * v, inf);
    mf.add_edge(2 * v + 1, 2 * u, inf);
  }
  int flow = mf.run(s, t, k);
  MengerResult out;
  out.k = k;
  auto next = [&](int node) {
    for (int id : mf.out_edges(node))
      if (id % 2 == 0 && mf.flow_on(id) > 0) return mf.to(id);
    return -1;
  };
  if (flow >= k) {
    out.has_paths = true;
    auto in_a = membership(n, a), in_b = membership(n, b);
    for (int id : mf.out_edges(s)) {
      if (id % 2 != 0 || mf.flow_on(id) <= 0) continue;
      Path p;
      int node = mf.to(id);
      while (node != t) {
        ensure(node >= 0 && node % 2 == 0, "flow decomposition left the split graph");
        p.push_back(node / 2);
        node = next(next(node));
      }
      out.paths.push_back(minimal_ab_subpath(p, in_a, in_b));
    }
    ensure(static_cast<int>(out.paths.size()) == k, "flow decomposition lost a path");
    return out;
  }
  auto reach = mf.residual_reachable(s);
  for (Vertex v = 0; v < n; ++v)
    if (reach[2 * v] && !reach[2 * v + 1]) out.separator.push_back(v);
  ensure(static_cast<int>(out.separator.size()) == flow, "cut size differs from the flow value");
  ensure(separates(g, a, b, out.separator), "extracted cut does not separate");
  return out;
}

int min_vertex_separator_size(const Graph& g, const VertexSet& a, const VertexSet& b) {
  return static_cast<int>(menger_max_flow(g, a, b, g.num_vertices() + 1).separator.size());
}

namespace {

bool fail(std::string* why, std::string msg) {
  if (why) *why = std::move(msg);
  return false;
}

}  // namespace

bool verify_disjoint_paths(const Graph& g, const VertexSet& a, const VertexSet& b,
                           const std::vector<Path>& paths, std::string* why) {
  std::vector<char> used(static_cast<std::size_t>(g.num_vertices()), 0);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    std::string tag = "path " + std::to_string(i);
    if (p.empty()) return fail(why, tag + " is empty");
    for (Vertex v : p)
      if (!g.contains(v)) return fail(why, tag + " has a vertex out of range");
    if (!is_path(g, p)) return fail(why, tag + " is not a path");
    if (!set_contains(a, p.front())) return fail(why, tag + " does not start in A");
    if (!set_contains(b, p.back())) return fail(why, tag + " does not end in B");
    for (Vertex v : p) {
      if (used[v]) return fail(why, tag + " shares vertex " + std::to_string(v));
      used[v] = 1;
    }
  }
  return true;
}

bool verify_anticomplete_packing(const Graph& g, const VertexSet& a, const VertexSet& b,
                                 const std::vector<Path>& paths, std::string* why) {
  if (!verify_disjoint_paths(g, a, b, paths, why)) return false;
  for (std::size_t i = 0; i < paths.size(); ++i)
    if (!is_induced_path(g, paths[i])) return fail(why, "path " + std::to_string(i) + " is not induced");
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = i + 1; j < paths.size(); ++j)
      if (!is_anticomplete(g, make_set(paths[i]), make_set(paths[j])))
        return fail(why, "paths " + std::to_string(i) + " and " + std::to_string(j) + " are adjacent");
  return true;
}

PackingSearch brute_force_anticomplete_packing(const Graph& g, const VertexSet& a, const VertexSet& b, int k,
                                               std::uint64_t budget) {
  PackingSearch out;
  if (k <= 0) {
    out.verdict = SearchVerdict::found;
    return out;
  }
  auto ps = enumerate_induced_paths(g, a, b, 200'000);
  if (ps.overflow) return out;
  int n = g.num_vertices();
  using Bits = boost::dynamic_bitset<>;
  std::vector<Bits> body, reach;
  for (const auto& p : ps.paths) {
    Bits in(n), nb(n);
    for (Vertex v : p) {
      in.set(v);
      nb.set(v);
      for (Vertex w : g.neighbors(v)) nb.set(w);
    }
    body.push_back(std::move(in));
    reach.push_back(std::move(nb));
  }
  int m = static_cast<int>(ps.paths.size());
  std::vector<int> chosen;
  bool exhausted = false;
  std::function<bool(int, const Bits&)> go = [&](int from, const Bits& blocked) {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (int i = from; i < m; ++i) {
      if (++out.nodes > budget) {
        exhausted = true;
        return false;
      }
      if (m - i < k - static_cast<int>(chosen.size())) return false;
      if (body[i].intersects(blocked)) continue;
      chosen.push_back(i);
      if (go(i + 1, blocked | reach[i])) return true;
      chosen.pop_back();
      if (exhausted) return false;
    }
    return false;
  };
  if (go(0, Bits(n))) {
    out.verdict = SearchVerdict::found;
    for (int i : chosen) out.paths.push_back(ps.paths[i]);
  } else {
    out.verdict = exhausted ? SearchVerdict::inconclusive : SearchVerdict::absent;
  }
  return out;
}

BigInt recursion_bound(int s, int z, int ell) {
  require(s >= 0 && z >= 0 && ell >= 0, "g(s, z, l) needs nonnegative arguments");
  return boost::multiprecision::pow(BigInt(s), static_cast<unsigned>(z)) *
         boost::multiprecision::pow(BigInt(2 * ell + 1), static_cast<unsigned>(4 * ell * ell + 1));
}

BigInt degree_bound(int max_degree, int mu) {
  require(max_degree >= 0 && mu >= 0, "g(D, mu) needs nonnegative arguments");
  return boost::multiprecision::pow(BigInt(max_degree + 1), static_cast<unsigned>(mu)) *
         boost::multiprecision::pow(BigInt(2 * mu + 1), static_cast<unsigned>(4 * mu * mu + 1));
}

namespace {

VertexSet to_local(const std::vector<int>& pos, const VertexSet& s) {
  VertexSet o;
  for (Vertex v : s)
    if (pos[v] >= 0) o.push_back(pos[v]);
  return make_set(std::move(o));
}

std::vector<int> positions(int n, const VertexSet& keep) {
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
  return pos;
}

std::string set_text(const VertexSet& s) {
  std::string o = "{";
  for (std::size_t i = 0; i < s.size(); ++i) o += (i ? ", " : "") + std::to_string(s[i]);
  return o + "}";
}

// Shortest A-B path of g inside the union of the given blocks.
Path lift_through_blocks(const Graph& g, const QuotientMap& qm, const Path& qpath, const VertexSet& a,
                         const VertexSet& b) {
  VertexSet vp;
  for (Vertex x : qpath) vp = set_union(vp, qm.blocks[x]);
  auto allowed = membership(g.num_vertices(), vp);
  Path p = shortest_path_within(g, set_intersection(a, vp), set_intersection(b, vp), allowed);
  ensure(!p.empty(), "no A-B path inside the lifted blocks");
  ensure(is_induced_path(g, p), "lifted path is not induced");
  return p;
}

}  // namespace

CleaningStep cleaning_step(const Graph& g, const EdgePartition& lambda, const VertexSet& a, const VertexSet& b,
                           long long f) {
  require(f >= 0, "f must be nonnegative");
  int n = g.num_vertices();
  CleaningStep st;
  st.f = f;
  st.s = lambda.s;
  st.parts = static_cast<int>(lambda.parts.size());
  for (int i = 0; i < st.parts; ++i)
    if (!lambda.clean[i]) {
      st.i_o = i;
      break;
    }
  require(st.i_o >= 0, "every part is already clean");
  require(st.s >= 1, "partition has size 0");
  auto flow = menger_max_flow(g, a, b, static_cast<int>(std::min<long long>(f + 1, n + 1)));
  require(flow.has_paths, "g has an A-B separator of size at most f: " + set_text(flow.separator));
  for (int i = 0; i < st.parts; ++i) st.clean_before += lambda.clean[i] ? 1 : 0;

  auto blocks = part_components(n, lambda.parts[st.i_o]);
  std::vector<char> covered(static_cast<std::size_t>(n), 0);
  for (const auto& c : blocks)
    for (Vertex v : c) covered[v] = 1;
  for (Vertex v = 0; v < n; ++v)
    if (!covered[v]) blocks.push_back({v});
  auto [q, qm] = quotient_by_components(g, blocks);
  VertexSet aq, bq;
  for (Vertex v : a) aq.push_back(qm.block_of[v]);
  for (Vertex v : b) bq.push_back(qm.block_of[v]);
  aq = make_set(std::move(aq));
  bq = make_set(std::move(bq));

  st.floor_f_over_s = f / st.s;
  int want = static_cast<int>(st.floor_f_over_s + 1);
  auto qflow = menger_max_flow(q, aq, bq, want);
  ensure(qflow.has_paths, "quotient has an A'-B' separator of size at most f/s");
  st.quotient_paths = qflow.paths;
  VertexSet hv;
  for (const auto& qp : qflow.paths) {
    auto p = lift_through_blocks(g, qm, qp, a, b);
    hv = set_union(hv, make_set(p));
    st.lifted_paths.push_back(std::move(p));
  }
  st.h_vertices = hv;
  st.h = induced_subgraph(g, hv);
  auto pos = positions(n, hv);
  std::vector<std::vector<Edge>> parts(lambda.parts.size());
  for (std::size_t i = 0; i < lambda.parts.size(); ++i)
    for (auto [u, v] : lambda.parts[i])
      if (pos[u] >= 0 && pos[v] >= 0) parts[i].emplace_back(pos[u], pos[v]);
  st.lambda_h = classify_parts(st.h, std::move(parts));
  st.a_h = to_local(pos, a);
  st.b_h = to_local(pos, b);

  ensure(st.lambda_h.clean[st.i_o], "contracted part is still cluttered in H");
  for (int i = 0; i < st.parts; ++i)
    if (lambda.clean[i]) ensure(st.lambda_h.clean[i], "a clean part became cluttered");
  for (int i = 0; i < st.parts; ++i) st.clean_after += st.lambda_h.clean[i] ? 1 : 0;
  st.s_after = st.lambda_h.s;
  ensure(st.clean_after > st.clean_before, "clean count did not increase");
  ensure(st.s_after <= st.s, "part components grew");
  auto hflow = menger_max_flow(st.h, st.a_h, st.b_h, want);
  ensure(hflow.has_paths, "H has an A-B separator of size at most f/s");
  st.flow_h = want;
  return st;
}

namespace {

InducedMengerOutcome recurse(const Graph& g, const EdgePartition& lambda, const VertexSet& a, const VertexSet& b,
                             int k, const RecursionOptions& opts) {
  InducedMengerOutcome out;
  RecursionLevel lv;
  lv.z = lambda.cluttered;
  lv.ell = static_cast<int>(lambda.parts.size());
  lv.s = lambda.s;
  lv.n = g.num_vertices();
  BigInt gv = recursion_bound(lv.s, lv.z, lv.ell);
  BigInt threshold = BigInt(k) * gv;
  lv.g_value = gv.str();
  lv.threshold = threshold.str();
  auto min_cut = menger_max_flow(g, a, b, g.num_vertices() + 1).separator;
  lv.min_separator = static_cast<int>(min_cut.size());

  if (lv.z == 0) {
    lv.branch = "base";
    lv.base_max_degree = g.max_degree();
    auto ps = brute_force_anticomplete_packing(g, a, b, k, opts.budget);
    if (ps.verdict == SearchVerdict::found) {
      out.verdict = MengerVerdict::packing;
      out.paths = std::move(ps.paths);
    } else if (ps.verdict == SearchVerdict::absent) {
      out.verdict = MengerVerdict::separator;
      out.separator = min_cut;
    }
    out.levels.push_back(lv);
    return out;
  }

  bool take_separator = opts.branch == InducedBranch::separator ||
                        (opts.branch == InducedBranch::automatic && BigInt(lv.min_separator) <= threshold) ||
                        lv.min_separator == 0;
  if (take_separator) {
    lv.branch = "separator";
    out.verdict = MengerVerdict::separator;
    out.separator = min_cut;
    out.levels.push_back(lv);
    return out;
  }
  lv.branch = "clean";
  long long f = opts.branch == InducedBranch::clean ? lv.min_separator - 1
                                                     : threshold.convert_to<long long>();
  auto step = cleaning_step(g, lambda, a, b, f);
  out.levels.push_back(lv);
  auto sub = recurse(step.h, step.lambda_h, step.a_h, step.b_h, k, opts);
  out.levels.insert(out.levels.end(), sub.levels.begin(), sub.levels.end());
  out.verdict = sub.verdict;
  for (const auto& p : sub.paths) {
    Path lifted;
    for (Vertex v : p) lifted.push_back(step.h.label(v));
    out.paths.push_back(std::move(lifted));
  }
  if (sub.verdict == MengerVerdict::separator) {
    // A separator of H does not separate g; report g's own minimum separator.
    out.separator = min_cut;
  }
  out.steps.push_back(std::move(step));
  out.steps.insert(out.steps.end(), std::make_move_iterator(sub.steps.begin()),
                   std::make_move_iterator(sub.steps.end()));
  return out;
}

}  // namespace

InducedMengerOutcome recursive_induced_menger(const Graph& g, const EdgePartition& lambda, const VertexSet& a,
                                              const VertexSet& b, int k, const RecursionOptions& opts) {
  require(k >= 0, "k must be nonnegative");
  require(!a.empty() && !b.empty(), "A and B must be nonempty");
  check_vertices(g, a, "A");
  check_vertices(g, b, "B");
  auto out = recurse(g, lambda, a, b, k, opts);
  if (out.verdict == MengerVerdict::packing) {
    std::string why;
    ensure(verify_anticomplete_packing(g, a, b, out.paths, &why), "packing failed verification: " + why);
  } else if (out.verdict == MengerVerdict::separator) {
    ensure(separates(g, a, b, out.separator), "separator failed verification");
  }
  return out;
}

DegreeMengerOutcome degree_dependent_menger(const Graph& g, int t, const VertexSet& a, const VertexSet& b, int k,
                                            const std::optional<EdgePartition>& loaded,
                                            const RecursionOptions& opts) {
  DegreeMengerOutcome out;
  out.t = t;
  out.lambda = loaded ? classify_parts(g, loaded->parts) : star_edge_partition(g);
  out.max_degree = g.max_degree();
  out.mu = static_cast<int>(out.lambda.parts.size());
  out.g_value = degree_bound(out.max_degree, out.mu).str();
  out.outcome = recursive_induced_menger(g, out.lambda, a, b, k, opts);
  return out;
}

AuxMengerResult aux_class_menger(const Graph& g, const LayeredFamily& fam, const VertexSet& a, const VertexSet& b,
                                 double f, const AuxMengerOptions& opts) {
  AuxMengerResult out;
  out.f = f;
  int n = g.num_vertices();
  out.sol = solve_ab_lp_auto(g, fam, a, b, opts.lp);
  bool rounding = out.sol.status == LpStatus::unreachable || opts.branch == BranchOverride::rounding ||
                  (opts.branch == BranchOverride::automatic && out.sol.objective <= f + opts.lp.tol);
  if (rounding) {
    out.cert = round_ab_separator(g, fam, out.sol, opts.lp.tol);
    return out;
  }
  out.separator_branch = false;
  require(out.sol.mode == LpMode::exact, "the dense branch needs an exact-mode LP");
  auto restricted = restrict_dual_to_upward_minimal(g, fam, out.sol);
  double ell = std::max(std::log2(2.0 * n), std::log2(4.0 * fam.num_sets()) / 6.0);
  out.packing = sample_path_multiset(g, fam, restricted, ell, opts.seed);
  if (!out.packing.accepted) return out;
  VertexSet hv;
  for (const auto& p : out.packing.paths) hv = set_union(hv, make_set(p));
  out.h_vertices = hv;
  out.h = induced_subgraph(g, hv);
  auto pos = positions(n, hv);
  out.a_h = to_local(pos, a);
  out.b_h = to_local(pos, b);
  out.h_max_degree = out.h.max_degree();
  out.degree_bound = 12.0 * std::pow(std::log2(2.0 * n), 2) + 4.0 * opts.d;
  out.degree_ok = out.h_max_degree <= out.degree_bound + 1e-9;
  if (n <= opts.audit_max_n) {
    double need = out.packing.f / 6.0;
    int below = static_cast<int>(std::ceil(need - 1e-9)) - 1;
    auto removed_base = membership(n, hv);
    for (auto& c : removed_base) c = !c;
    auto in_a = membership(n, a), in_b = membership(n, b);
    auto bad = [&](const VertexSet& s) {
      auto removed = removed_base;
      for (Vertex v : s) removed[v] = 1;
      for (const auto& comp : components_without(g, removed)) {
        bool ha = false, hb = false;
        for (Vertex v : comp) {
          ha = ha || in_a[v];
          hb = hb || in_b[v];
        }
        if (ha && hb) return false;
      }
      return true;
    };
    if (below >= 0) out.audit = audit_cover_lower_bound(fam, hv, below, bad, opts.audit_budget);
    else out.audit = CoverAudit{};
  }
  return out;
}

MengerPipelineResult coarse_menger_pipeline(const Graph& g, int t, const VertexSet& a, const VertexSet& b, int k,
                                            const MengerPipelineOptions& opts) {
  require(k >= 1, "k must be positive");
  require(t >= 1, "t must be positive");
  require(!a.empty() && !b.empty(), "A and B must be nonempty");
  check_vertices(g, a, "A");
  check_vertices(g, b, "B");
  MengerPipelineResult out;
  int n = g.num_vertices();
  out.partition = greedy_four_radius_partition(g);
  auto blocks = partition_blocks(out.partition);
  auto reps = block_representatives(out.partition);
  auto [q, qm] = quotient_by_components(g, blocks);
  out.n_quotient = q.num_vertices();
  VertexSet aq, bq;
  for (Vertex v : a) aq.push_back(qm.block_of[v]);
  for (Vertex v : b) bq.push_back(qm.block_of[v]);
  aq = make_set(std::move(aq));
  bq = make_set(std::move(bq));
  out.d = degeneracy(q);
  auto fam = build_layered_family(q, degeneracy_layering(q, out.d));
  out.thickness = fam.thickness();

  double lg = std::log2(2.0 * out.n_quotient);
  out.delta_tilde = static_cast<int>(std::floor(12.0 * lg * lg + 4.0 * out.d));
  out.mu_tilde = static_cast<int>(star_edge_partition(q).parts.size());
  BigInt gt = degree_bound(out.delta_tilde, out.mu_tilde);
  BigInt f = 6 * BigInt(k) * gt + 1;
  out.g_tilde = gt.str();
  out.f = f.str();
  double fd = f > BigInt(1'000'000'000'000LL) ? std::numeric_limits<double>::infinity() : f.convert_to<double>();

  AuxMengerOptions aux_opts;
  aux_opts.branch = opts.branch;
  aux_opts.seed = opts.seed;
  aux_opts.d = out.d;
  aux_opts.lp = opts.lp;
  out.aux = aux_class_menger(q, fam, aq, bq, fd, aux_opts);

  if (!out.aux.separator_branch) {
    if (!out.aux.packing.accepted) {
      out.notes.push_back("path sampling was rejected on every attempt; falling back to the separator branch");
    } else if (out.aux.a_h.empty() || out.aux.b_h.empty()) {
      out.notes.push_back("sampled subgraph misses A or B; falling back to the separator branch");
    } else {
      out.inner = degree_dependent_menger(out.aux.h, t, out.aux.a_h, out.aux.b_h, k, std::nullopt, opts.recursion);
      const auto& res = out.inner->outcome;
      if (res.verdict == MengerVerdict::packing) {
        for (const auto& hp : res.paths) {
          Path qp;
          for (Vertex v : hp) qp.push_back(out.aux.h.label(v));
          out.paths.push_back(lift_through_blocks(g, qm, qp, a, b));
        }
        std::string why;
        out.packing_verified = verify_anticomplete_packing(g, a, b, out.paths, &why);
        ensure(out.packing_verified, "lifted packing failed verification: " + why);
        out.kind = "packing";
        return out;
      }
      out.notes.push_back("inner Menger step returned " + to_string(res.verdict) +
                          "; falling back to the separator branch");
    }
  }

  const SeparatorCertificate cert =
      out.aux.separator_branch ? out.aux.cert : round_ab_separator(q, fam, out.aux.sol, opts.lp.tol);
  auto cover = greedy_cover(fam, cert.separator);
  VertexSet expanded;
  for (int i : cover.sets) expanded = set_union(expanded, fam.members(i));
  for (Vertex x : expanded) out.separator = set_union(out.separator, qm.blocks[x]);
  for (Vertex w : cover.centers) out.centers.push_back(reps[w]);
  out.centers = make_set(std::move(out.centers));
  out.kind = "separator";
  out.radius_vertices = 8 * std::max(1, ceil_log2(2.0 * out.n_quotient));
  out.independence_radius = 16 * std::max(1, ceil_log2(2.0 * n));
  out.separation_verified = separates(g, a, b, out.separator);
  out.cover_verified = covered_within(g, out.separator, out.centers, out.radius_vertices);
  ensure(out.separation_verified, "lifted separator does not separate A from B");
  ensure(out.cover_verified, "lifted separator is not covered at the lifted radius");
  if (n <= opts.alpha_max_n) out.alpha = distance_r_independence(g, out.separator, out.independence_radius);
  return out;
}

}  // namespace coarse
