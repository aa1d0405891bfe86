#include "coarse/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "coarse/errors.hpp"
#include "coarse/simplex.hpp"
#include "coarse/weights.hpp"

namespace coarse {

FractionalCover fractional_cover(const LayeredFamily& fam, std::span<const Vertex> s) {
  FractionalCover out;
  out.weights.assign(static_cast<std::size_t>(fam.num_sets()), 0.0);
  if (s.empty()) return out;
  lp::PackingLp prog(std::vector<double>(static_cast<std::size_t>(fam.num_sets()), 1.0));
  for (Vertex v : s) {
    lp::Column col;
    col.cost = 1.0;
    for (int i : fam.sets_containing(v)) col.entries.emplace_back(i, 1.0);
    prog.add_column(std::move(col));
  }
  auto res = prog.solve();
  ensure(res.status == lp::Status::optimal, "cover LP did not reach optimality");
  for (int i = 0; i < fam.num_sets(); ++i) out.weights[i] = std::max(0.0, res.duals[i]);
  out.value = res.objective;
  return out;
}

Cover greedy_cover(const LayeredFamily& fam, std::span<const Vertex> s) {
  Cover out;
  std::vector<char> need(static_cast<std::size_t>(fam.num_vertices()), 0);
  std::size_t left = 0;
  for (Vertex v : s)
    if (!need[v]) {
      need[v] = 1;
      ++left;
    }
  while (left > 0) {
    int best = -1, best_gain = 0;
    for (int i = 0; i < fam.num_sets(); ++i) {
      int gain = 0;
      for (Vertex v : fam.members(i)) gain += need[v];
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    ensure(best >= 0, "family does not cover the set");
    for (Vertex v : fam.members(best))
      if (need[v]) {
        need[v] = 0;
        --left;
      }
    out.sets.push_back(best);
    out.centers.push_back(fam.center(best));
  }
  std::sort(out.sets.begin(), out.sets.end());
  out.centers = make_set(out.centers);
  return out;
}

VertexSet threshold_set(const std::vector<double>& d, std::span<const double> yv, double r) {
  VertexSet s;
  for (Vertex v = 0; v < static_cast<Vertex>(d.size()); ++v)
    if (d[v] < kInfiniteDistance && d[v] - yv[v] < r && r <= d[v]) s.push_back(v);
  return s;
}

std::vector<SweepPoint> ab_threshold_sweep(const Graph& g, const LayeredFamily& fam,
                                           std::span<const double> y, const VertexSet& a,
                                           const VertexSet& b, double& r_max) {
  auto yv = vertex_mass(fam, y);
  auto d = vertex_weighted_distance(g, yv, a).dist;
  r_max = 1.0;
  for (Vertex v : b)
    if (d[v] < kInfiniteDistance) r_max = std::min(r_max, d[v]);
  std::vector<SweepPoint> out;
  if (r_max <= 0.0) return out;

  std::vector<double> ends{r_max};
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (d[v] == kInfiniteDistance) continue;
    for (double e : {d[v] - yv[v], d[v]})
      if (e > 0.0 && e <= r_max) ends.push_back(e);
  }
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  std::vector<double> cands;
  double prev = 0.0;
  for (double e : ends) {
    cands.push_back((prev + e) / 2.0);
    cands.push_back(e);
    prev = e;
  }
  std::map<VertexSet, std::size_t> seen;
  for (double r : cands) {
    auto s = threshold_set(d, yv, r);
    if (seen.count(s)) continue;
    seen.emplace(s, out.size());
    double fc = fractional_cover(fam, s).value;
    out.push_back({r, std::move(s), fc});
  }
  return out;
}

SeparatorCertificate round_ab_separator(const Graph& g, const LayeredFamily& fam,
                                        const AbLpSolution& sol, double tol) {
  SeparatorCertificate cert;
  cert.kind = "ab";
  cert.a = sol.a;
  cert.b = sol.b;
  cert.radius_vertices = fam.thickness();
  cert.fcov.weights.assign(static_cast<std::size_t>(fam.num_sets()), 0.0);
  cert.ledger.lp_objective = sol.objective;
  cert.ledger.thickness = fam.thickness();
  cert.ledger.n = g.num_vertices();
  cert.ledger.claimed_bound =
      8.0 * fam.thickness() * std::log2(2.0 * std::max(1, g.num_vertices())) * sol.objective;
  if (sol.status == LpStatus::unreachable) return cert;
  require(sol.status == LpStatus::optimal, "AB LP solution is not optimal");
  require(static_cast<int>(sol.x.size()) == fam.num_sets(), "solution does not match family");

  // Normalized weights can lose vertex-sum feasibility in fast mode; then the raw ones are used.
  auto y = normalize_weights(sol.x);
  double r_max = 0.0;
  auto sweep = ab_threshold_sweep(g, fam, y, sol.a, sol.b, r_max);
  if (r_max < 1.0 - 1e-6) {
    cert.used_raw_weights = true;
    sweep = ab_threshold_sweep(g, fam, sol.x, sol.a, sol.b, r_max);
  }
  require(r_max > tol && !sweep.empty(), "solution leaves an A-B path of zero weight");

  const SweepPoint* best = &sweep.front();
  for (const auto& p : sweep)
    if (p.fcov < best->fcov - 1e-12 || (std::abs(p.fcov - best->fcov) <= 1e-12 && p.s.size() < best->s.size()))
      best = &p;
  cert.threshold = best->r;
  cert.separator = best->s;
  ensure(separates(g, sol.a, sol.b, cert.separator), "threshold set is not an A-B separator");
  cert.fcov = fractional_cover(fam, cert.separator);
  cert.cover_centers = greedy_cover(fam, cert.separator).centers;
  cert.ledger.achieved = cert.fcov.value;
  cert.ledger.satisfied = cert.fcov.value <= cert.ledger.claimed_bound + 1e-6;
  return cert;
}

// ── balanced rounding ──

RegionGrowParams region_grow_params(double f, int thickness) {
  RegionGrowParams p;
  p.f = f;
  p.eps = 1.0 / (500.0 * std::log2(f + 4.0));
  p.ell_max = static_cast<int>(std::ceil(std::log2((f + 4.0) / p.eps)));
  p.z0_threshold = p.eps / (2.0 * thickness);
  return p;
}

namespace {

constexpr double kMeasureTol = 1e-9;

bool heavy(int members, int total) { return 100 * members > 95 * total; }

VertexSet ball(const VertexSet& c, const std::vector<double>& d, double r) {
  VertexSet out;
  for (Vertex v : c)
    if (d[v] <= r) out.push_back(v);
  return out;
}

int count_in(const VertexSet& s, const VertexSet& xs) {
  return static_cast<int>(set_intersection(s, xs).size());
}

}  // namespace

RegionGrowResult region_grow_once(const Graph& g, const LayeredFamily& fam, std::span<const double> x,
                                  const VertexSet& xs, const VertexSet& z, const LpOptions& opts) {
  RegionGrowResult out;
  int total = static_cast<int>(xs.size());
  VertexSet c;
  for (auto& comp : components_without(g, membership(g.num_vertices(), z)))
    if (heavy(count_in(comp, xs), total)) c = std::move(comp);
  if (c.empty()) return out;
  out.heavy = true;

  double f = 0.0;
  for (double w : x) f += w;
  auto par = region_grow_params(f, fam.thickness());
  auto xv = vertex_mass(fam, x);
  auto& rec = out.record;
  rec.u_bar = set_intersection(c, xs).front();
  rec.heavy_size = static_cast<int>(c.size());
  rec.heavy_x = count_in(c, xs);
  auto d = vertex_weighted_distance(g, xv, std::span<const Vertex>(&rec.u_bar, 1)).dist;

  auto r = [&](int i) { return 3.0 * i * par.eps; };
  for (int l = 1; l <= par.ell_max; ++l) {
    auto inner = ball(c, d, r(l));
    auto boundary = set_difference(ball(c, d, r(l) + 3.0 * par.eps), ball(c, d, r(l) + par.eps));
    double mb = measure(fam, x, inner), md = measure(fam, x, boundary);
    if (md <= mb + kMeasureTol) {
      rec.ell = l;
      rec.r_ell = r(l);
      rec.mu_ball = mb;
      rec.mu_boundary = md;
      rec.mu_next_ball = measure(fam, x, ball(c, d, r(l + 1)));
      rec.local = set_intersection(sets_hit(fam, inner), sets_hit(fam, boundary)).empty();
      rec.additive = rec.mu_next_ball >= mb + md - kMeasureTol;
      break;
    }
  }
  ensure(rec.ell > 0, "no layer satisfies the measure inequality");

  VertexSet a_prime = ball(c, d, rec.r_ell + par.eps);
  VertexSet b_prime = set_difference(c, ball(c, d, r(rec.ell + 1)));
  ensure(!b_prime.empty(), "far side of the heavy component is empty");

  Graph h = induced_subgraph(g, c);
  auto famh = build_layered_family(h, restrict_partition(fam.partition(), h));
  for (int i = 0; i < famh.num_sets(); ++i) {
    Vertex w = h.label(famh.center(i));
    int j = fam.set_of_center(w);
    ensure(j >= 0, "restricted family has a center that is not a center of the family");
    VertexSet lifted;
    for (Vertex v : famh.members(i)) lifted.push_back(h.label(v));
    ensure(lifted == set_intersection(fam.members(j), c), "restricted family differs from F cap C");
  }
  std::vector<int> pos(static_cast<std::size_t>(g.num_vertices()), -1);
  for (std::size_t i = 0; i < c.size(); ++i) pos[c[i]] = static_cast<int>(i);
  auto local_ids = [&](const VertexSet& s) {
    VertexSet o;
    for (Vertex v : s) o.push_back(pos[v]);
    return o;
  };
  auto sol = solve_ab_lp_auto(h, famh, local_ids(a_prime), local_ids(b_prime), opts);
  auto cut = round_ab_separator(h, famh, sol, opts.tol);
  VertexSet s_prime;
  for (Vertex v : cut.separator) s_prime.push_back(h.label(v));
  out.s = set_difference(downward_closure(fam, s_prime), z);
  rec.added = out.s;

  auto removed = membership(g.num_vertices(), z);
  for (Vertex v : out.s) removed[v] = 1;
  auto in_bp = membership(g.num_vertices(), b_prime);
  auto in_c = membership(g.num_vertices(), c);
  for (auto& comp : components_without(g, removed)) {
    if (!in_c[comp.front()]) continue;
    bool far = std::any_of(comp.begin(), comp.end(), [&](Vertex v) { return in_bp[v] != 0; });
    auto& side = far ? out.b : out.a;
    side.insert(side.end(), comp.begin(), comp.end());
  }
  out.a = make_set(out.a);
  out.b = make_set(out.b);
  rec.a_x = count_in(out.a, xs);
  rec.b_size = static_cast<int>(out.b.size());
  ensure(!heavy(rec.a_x, total), "near side keeps too much of X");
  ensure(out.b.size() < c.size(), "far side is not smaller than the component");
  return out;
}

bool is_balanced_separator(const Graph& g, const VertexSet& xs, const VertexSet& s, double phi) {
  auto comps = components_without(g, membership(g.num_vertices(), s));
  for (const auto& comp : comps)
    if (count_in(comp, xs) > phi * static_cast<double>(xs.size()) + 1e-9) return false;
  return true;
}

bool covered_within(const Graph& g, const VertexSet& s, const VertexSet& centers, int radius_vertices) {
  if (s.empty()) return true;
  if (centers.empty() || radius_vertices < 1) return false;
  auto dist = hop_distances(g, centers);
  return std::all_of(s.begin(), s.end(),
                     [&](Vertex v) { return dist[v] != kUnreachable && dist[v] <= radius_vertices - 1; });
}

SeparatorCertificate round_balanced_separator(const Graph& g, const LayeredFamily& fam,
                                              const BalancedLpSolution& sol, const LpOptions& opts) {
  require(sol.status == LpStatus::optimal, "balanced LP solution is not optimal");
  require(sol.objective > 0.0, "balanced rounding needs a positive LP optimum");
  const auto& xs = sol.x_set;
  int n = g.num_vertices();
  SeparatorCertificate cert;
  cert.kind = "balanced";
  cert.x_set = xs;
  cert.radius_vertices = fam.thickness();
  double f = sol.objective;
  int k = fam.thickness();
  cert.ledger.lp_objective = f;
  cert.ledger.thickness = k;
  cert.ledger.n = n;
  cert.ledger.claimed_bound = 5000.0 * k * std::log2(2.0 * std::max(1, n)) * std::log2(f + 4.0) * f;

  auto par = region_grow_params(f, k);
  auto xv = vertex_mass(fam, sol.x);
  VertexSet z0;
  for (Vertex v = 0; v < n; ++v)
    if (xv[v] >= par.z0_threshold) z0.push_back(v);
  VertexSet z = downward_closure(fam, z0);
  for (int round = 0;; ++round) {
    ensure(round <= n, "region growing did not terminate");
    auto step = region_grow_once(g, fam, sol.x, xs, z, opts);
    if (!step.heavy) break;
    z = set_union(z, step.s);
    cert.rounds.push_back(std::move(step.record));
  }
  cert.separator = z;
  ensure(is_balanced_separator(g, xs, z, 0.95), "rounded set is not a balanced separator");
  ensure(downward_closure(fam, z) == z, "rounded set is not downward closed");
  cert.fcov = fractional_cover(fam, z);
  cert.cover_centers = greedy_cover(fam, z).centers;
  cert.ledger.achieved = cert.fcov.value;
  cert.ledger.satisfied = cert.fcov.value <= cert.ledger.claimed_bound + 1e-6;
  return cert;
}

}  // namespace coarse
