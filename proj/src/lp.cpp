#include "coarse/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "coarse/errors.hpp"
#include "coarse/simplex.hpp"
#include "coarse/weights.hpp"

namespace coarse {

std::string to_string(LpMode m) { return m == LpMode::exact ? "exact" : "fast"; }

LpMode parse_lp_mode(const std::string& s) {
  if (s == "exact") return LpMode::exact;
  if (s == "fast") return LpMode::fast;
  throw ValidationError("unknown LP mode '" + s + "'");
}

Path minimal_ab_subpath(const Path& p, const std::vector<char>& in_a, const std::vector<char>& in_b) {
  std::size_t j = 0;
  while (j < p.size() && !in_b[p[j]]) ++j;
  ensure(j < p.size(), "path does not reach B");
  std::size_t i = j + 1;
  while (i > 0 && !in_a[p[i - 1]]) --i;
  ensure(i > 0, "path does not start in A");
  return Path(p.begin() + static_cast<long>(i - 1), p.begin() + static_cast<long>(j + 1));
}

namespace {

constexpr double kSupportTol = 1e-12;

lp::Column hitting_column(const LayeredFamily& fam, const Path& p, double cost, int row_offset,
                          bool count_multiplicity) {
  lp::Column col;
  col.cost = cost;
  std::map<int, int> hits;
  for (Vertex v : p)
    for (int i : fam.sets_containing(v)) ++hits[i];
  for (auto [i, c] : hits) col.entries.emplace_back(row_offset + i, count_multiplicity ? c : 1.0);
  return col;
}

// Shortest vertex-weighted A-B path reduced to a minimal induced A-B path.
Path cheapest_ab_path(const Graph& g, const VertexSet& a, const VertexSet& b,
                      const std::vector<double>& xv, const std::vector<char>& in_a,
                      const std::vector<char>& in_b, double& cost) {
  auto wd = vertex_weighted_distance(g, xv, a);
  Vertex best = -1;
  for (Vertex v : b)
    if (wd.dist[v] < kInfiniteDistance && (best < 0 || wd.dist[v] < wd.dist[best])) best = v;
  if (best < 0) return {};
  Path p = minimal_ab_subpath(trace_path(wd, best), in_a, in_b);
  p = extract_induced_path_from_walk(g, p);
  cost = 0.0;
  for (Vertex v : p) cost += xv[v];
  return p;
}

void validate_terminals(const Graph& g, const VertexSet& a, const VertexSet& b) {
  check_vertices(g, a, "A");
  check_vertices(g, b, "B");
  require(std::is_sorted(a.begin(), a.end()) && std::is_sorted(b.begin(), b.end()),
          "terminal sets must be sorted");
}

}  // namespace

AbLpSolution solve_ab_lp(const Graph& g, const LayeredFamily& fam, const VertexSet& a,
                         const VertexSet& b, LpMode mode, const LpOptions& opts) {
  validate_terminals(g, a, b);
  require(fam.num_vertices() == g.num_vertices(), "family does not match graph");
  int n = g.num_vertices();
  AbLpSolution sol;
  sol.mode = mode;
  sol.a = a;
  sol.b = b;
  sol.x.assign(static_cast<std::size_t>(fam.num_sets()), 0.0);
  auto in_a = membership(n, a), in_b = membership(n, b);

  if (separates(g, a, b, {})) {
    sol.status = LpStatus::unreachable;
    return sol;
  }
  lp::PackingLp prog(std::vector<double>(static_cast<std::size_t>(fam.num_sets()), 1.0), opts.tol);
  std::vector<Path> paths;
  lp::Result res;
  if (mode == LpMode::exact) {
    auto ps = enumerate_induced_paths(g, a, b, opts.path_cap);
    if (ps.overflow) {
      sol.status = LpStatus::overflow;
      return sol;
    }
    paths = std::move(ps.paths);
    for (const auto& p : paths) prog.add_column(hitting_column(fam, p, 1.0, 0, false));
    res = prog.solve();
  } else {
    std::set<Path> seen;
    for (std::size_t round = 0;; ++round) {
      res = prog.solve();
      ensure(res.status == lp::Status::optimal, "AB LP simplex did not reach optimality");
      if (round >= opts.max_rounds) break;
      auto xv = vertex_mass(fam, res.duals);
      double cost = 0.0;
      Path p = cheapest_ab_path(g, a, b, xv, in_a, in_b, cost);
      if (p.empty() || cost >= 1.0 - opts.tol || !seen.insert(p).second) break;
      paths.push_back(p);
      prog.add_column(hitting_column(fam, p, 1.0, 0, true));
    }
  }
  ensure(res.status == lp::Status::optimal, "AB LP simplex did not reach optimality");
  sol.columns = paths.size();
  for (int i = 0; i < fam.num_sets(); ++i) sol.x[i] = std::max(0.0, res.duals[i]);
  for (double v : sol.x) sol.objective += v;
  for (std::size_t j = 0; j < paths.size(); ++j)
    if (res.primal[j] > kSupportTol) {
      sol.dual.push_back({paths[j], res.primal[j]});
      sol.dual_objective += res.primal[j];
    }
  return sol;
}

AbLpSolution solve_ab_lp_auto(const Graph& g, const LayeredFamily& fam, const VertexSet& a,
                              const VertexSet& b, const LpOptions& opts) {
  auto sol = solve_ab_lp(g, fam, a, b, LpMode::exact, opts);
  if (sol.status == LpStatus::overflow) sol = solve_ab_lp(g, fam, a, b, LpMode::fast, opts);
  return sol;
}

std::vector<double> normalize_weights(std::span<const double> x) {
  std::vector<double> y(x.size(), 0.0);
  if (x.empty()) return y;
  double threshold = 1.0 / (2.0 * static_cast<double>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] < threshold ? 0.0 : std::min(1.0, 2.0 * x[i]);
  return y;
}

AbLpSolution normalize_ab_solution(const LayeredFamily& fam, const AbLpSolution& sol) {
  require(static_cast<int>(sol.x.size()) == fam.num_sets(), "solution does not match family");
  AbLpSolution out = sol;
  out.x = normalize_weights(sol.x);
  out.objective = 0.0;
  for (double v : out.x) out.objective += v;
  return out;
}

namespace {

// Follows witnesses until the path is upward minimal. Returns false on budget exhaustion.
bool reroute(const Graph& g, const LayeredFamily& fam, Path& p, std::uint64_t budget,
             const std::vector<char>* in_a, const std::vector<char>* in_b) {
  while (true) {
    auto r = is_upward_minimal(g, fam, p, budget);
    if (r.verdict == MinimalityVerdict::minimal) return true;
    if (r.verdict == MinimalityVerdict::exhausted) return false;
    p = in_a ? minimal_ab_subpath(r.witness, *in_a, *in_b) : r.witness;
  }
}

}  // namespace

AbLpSolution restrict_dual_to_upward_minimal(const Graph& g, const LayeredFamily& fam,
                                             const AbLpSolution& sol, std::uint64_t budget) {
  require(sol.status == LpStatus::optimal || sol.status == LpStatus::unreachable,
          "cannot restrict an unsolved LP");
  int n = g.num_vertices();
  auto in_a = membership(n, sol.a), in_b = membership(n, sol.b);
  std::map<Path, double> moved;
  for (const auto& wp : sol.dual) {
    Path p = wp.path;
    if (!reroute(g, fam, p, budget, &in_a, &in_b)) {
      AbLpSolution out = sol;
      out.minimality_warning = true;
      return out;
    }
    moved[p] += wp.weight;
  }
  AbLpSolution out = sol;
  out.dual.clear();
  for (auto& [p, w] : moved) out.dual.push_back({p, w});
  return out;
}

// ── balanced LP ──

namespace {

struct PairPath {
  int u, v;
  Path path;
};

void validate_x_set(const LayeredFamily& fam, const VertexSet& x) {
  require(!x.empty(), "X must be non-empty");
  require(std::is_sorted(x.begin(), x.end()) && std::adjacent_find(x.begin(), x.end()) == x.end(),
          "X must be a sorted set");
  for (Vertex v : x) {
    require(v >= 0 && v < fam.num_vertices(), "X contains unknown vertex " + std::to_string(v));
    require(fam.set_of_center(v) >= 0, "X must consist of centers; " + std::to_string(v) + " is not");
  }
}

}  // namespace

BalancedLpSolution solve_balanced_lp(const Graph& g, const LayeredFamily& fam, const VertexSet& xs,
                                     LpMode mode, const LpOptions& opts) {
  require(fam.num_vertices() == g.num_vertices(), "family does not match graph");
  validate_x_set(fam, xs);
  int q = static_cast<int>(xs.size());
  int sets = fam.num_sets();
  int pair_rows = q * q;
  BalancedLpSolution sol;
  sol.mode = mode;
  sol.x_set = xs;

  std::vector<double> rhs(static_cast<std::size_t>(pair_rows), 0.0);
  rhs.resize(static_cast<std::size_t>(pair_rows + sets), 1.0);
  lp::PackingLp prog(rhs, opts.tol);
  double tenth = static_cast<double>(q) / 10.0;
  for (int u = 0; u < q; ++u) {
    lp::Column col;
    col.cost = tenth;
    for (int v = 0; v < q; ++v) col.entries.emplace_back(u * q + v, 1.0);
    prog.add_column(std::move(col));
  }
  for (int r = 0; r < pair_rows; ++r) prog.add_column({-1.0, {{r, -1.0}}});
  const int first_path_col = q + pair_rows;

  std::vector<PairPath> paths;
  auto add_path = [&](int u, int v, Path p, bool multiplicity) {
    auto col = hitting_column(fam, p, 0.0, pair_rows, multiplicity);
    col.entries.insert(col.entries.begin(), {u * q + v, -1.0});
    prog.add_column(std::move(col));
    paths.push_back({u, v, std::move(p)});
  };

  lp::Result res;
  if (mode == LpMode::exact) {
    std::size_t budget = opts.path_cap;
    for (int u = 0; u < q; ++u)
      for (int v = 0; v < q; ++v) {
        auto ps = enumerate_induced_paths(g, {xs[u]}, {xs[v]}, budget);
        if (ps.overflow) {
          sol.status = LpStatus::overflow;
          return sol;
        }
        budget -= ps.paths.size();
        for (auto& p : ps.paths) add_path(u, v, std::move(p), false);
      }
    res = prog.solve();
  } else {
    std::set<std::tuple<int, int, Path>> seen;
    for (std::size_t round = 0;; ++round) {
      res = prog.solve();
      ensure(res.status == lp::Status::optimal, "balanced LP simplex did not reach optimality");
      if (round >= opts.max_rounds) break;
      auto xv = vertex_mass(fam, std::span<const double>(res.duals).subspan(static_cast<std::size_t>(pair_rows)));
      bool added = false;
      for (int u = 0; u < q; ++u) {
        auto wd = vertex_weighted_distance(g, xv, std::span<const Vertex>(&xs[u], 1));
        for (int v = 0; v < q; ++v) {
          if (wd.dist[xs[v]] == kInfiniteDistance) continue;
          if (res.duals[u * q + v] <= wd.dist[xs[v]] + opts.tol) continue;
          Path p = extract_induced_path_from_walk(g, trace_path(wd, xs[v]));
          if (!seen.emplace(u, v, p).second) continue;
          add_path(u, v, std::move(p), true);
          added = true;
        }
      }
      if (!added) break;
    }
  }
  ensure(res.status == lp::Status::optimal, "balanced LP simplex did not reach optimality");
  sol.columns = paths.size();
  sol.x.assign(static_cast<std::size_t>(sets), 0.0);
  for (int i = 0; i < sets; ++i) sol.x[i] = std::max(0.0, res.duals[pair_rows + i]);
  for (double v : sol.x) sol.objective += v;

  // Raise every d_{u,v} to the largest feasible value.
  sol.d.assign(static_cast<std::size_t>(pair_rows), 1.0);
  if (mode == LpMode::exact) {
    for (const auto& pp : paths) {
      double s = 0.0;
      for (int i : sets_hit(fam, pp.path)) s += sol.x[i];
      double& d = sol.d[pp.u * q + pp.v];
      d = std::min(d, s);
    }
  } else {
    auto xv = vertex_mass(fam, sol.x);
    for (int u = 0; u < q; ++u) {
      auto wd = vertex_weighted_distance(g, xv, std::span<const Vertex>(&xs[u], 1));
      for (int v = 0; v < q; ++v) sol.d[u * q + v] = std::min(1.0, wd.dist[xs[v]]);
    }
  }

  auto& dual = sol.dual;
  dual.rho.assign(res.primal.begin(), res.primal.begin() + q);
  dual.eta.assign(res.primal.begin() + q, res.primal.begin() + first_path_col);
  for (std::size_t j = 0; j < paths.size(); ++j) {
    double w = res.primal[first_path_col + j];
    if (w > kSupportTol) dual.gamma.push_back({paths[j].u, paths[j].v, paths[j].path, w});
  }
  dual.objective = res.objective;
  return sol;
}

BalancedLpSolution solve_balanced_lp_auto(const Graph& g, const LayeredFamily& fam,
                                          const VertexSet& x, const LpOptions& opts) {
  auto sol = solve_balanced_lp(g, fam, x, LpMode::exact, opts);
  if (sol.status == LpStatus::overflow) sol = solve_balanced_lp(g, fam, x, LpMode::fast, opts);
  return sol;
}

BalancedLpSolution restrict_balanced_dual_to_upward_minimal(const Graph& g, const LayeredFamily& fam,
                                                            const BalancedLpSolution& sol,
                                                            std::uint64_t budget) {
  std::map<std::tuple<int, int, Path>, double> moved;
  for (const auto& t : sol.dual.gamma) {
    Path p = t.path;
    if (!reroute(g, fam, p, budget, nullptr, nullptr)) {
      auto out = sol;
      out.minimality_warning = true;
      return out;
    }
    moved[{t.u, t.v, p}] += t.weight;
  }
  auto out = sol;
  out.dual.gamma.clear();
  for (auto& [key, w] : moved) out.dual.gamma.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), w});
  return out;
}

BalancedDualCheck check_balanced_dual(const LayeredFamily& fam, const BalancedLpSolution& sol,
                                      double tol) {
  int q = static_cast<int>(sol.x_set.size());
  const auto& d = sol.dual;
  BalancedDualCheck c;
  std::vector<double> load(static_cast<std::size_t>(fam.num_sets()), 0.0);
  std::vector<double> pair_gamma(static_cast<std::size_t>(q) * q, 0.0);
  for (const auto& t : d.gamma) {
    pair_gamma[t.u * q + t.v] += t.weight;
    for (int i : sets_hit(fam, t.path)) load[i] += t.weight;
  }
  for (double l : load) c.max_set_load = std::max(c.max_set_load, l);
  c.max_row_violation = -kInfiniteDistance;
  c.max_eta_excess = -kInfiniteDistance;
  double tenth = static_cast<double>(q) / 10.0;
  for (int u = 0; u < q; ++u) {
    double eta_sum = 0.0;
    for (int v = 0; v < q; ++v) {
      c.max_row_violation = std::max(c.max_row_violation, d.rho[u] - d.eta[u * q + v] - pair_gamma[u * q + v]);
      eta_sum += d.eta[u * q + v];
    }
    c.max_eta_excess = std::max(c.max_eta_excess, eta_sum - tenth * d.rho[u]);
    c.rho_total += d.rho[u];
  }
  c.ten_f_le_rho_x = 10.0 * sol.objective <= c.rho_total * q + tol;
  return c;
}

bool check_strong_duality(double primal, double dual, double tol) {
  return std::abs(primal - dual) <= tol * std::max(1.0, std::abs(primal));
}

}  // namespace coarse
