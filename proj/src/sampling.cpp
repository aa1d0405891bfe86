#include "coarse/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

int pick(const std::vector<double>& cum, double u) {
  double target = u * cum.back();
  auto it = std::upper_bound(cum.begin(), cum.end(), target);
  if (it == cum.end()) --it;
  return static_cast<int>(it - cum.begin());
}

}  // namespace

PathPacking sample_path_multiset(const Graph& g, const LayeredFamily& fam, const AbLpSolution& sol,
                                 double ell, std::uint64_t seed, int max_attempts) {
  require(sol.mode == LpMode::exact, "path sampling needs an exact-mode dual");
  require(sol.dual_objective > 0.0, "path sampling needs a positive dual objective");
  require(ell >= std::log2(4.0 * fam.num_sets()) / 6.0, "ell is below log(4|F|)/6");
  (void)g;
  PathPacking out;
  out.f = sol.dual_objective;
  out.ell = ell;
  out.seed = seed;
  out.target = static_cast<int>(std::ceil(out.f * ell - 1e-9));
  std::vector<double> cum;
  double acc = 0.0;
  for (const auto& wp : sol.dual) cum.push_back(acc += wp.weight);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::vector<Path> paths;
    std::vector<int> cong(static_cast<std::size_t>(fam.num_sets()), 0);
    int worst_inter = 0;
    for (int i = 0; i < out.target; ++i) {
      const Path& p = sol.dual[pick(cum, unit_draw(rng))].path;
      std::vector<int> hits;
      for (Vertex v : p)
        for (int s : fam.sets_containing(v)) hits.push_back(s);
      std::sort(hits.begin(), hits.end());
      for (std::size_t j = 0; j < hits.size();) {
        std::size_t e = j;
        while (e < hits.size() && hits[e] == hits[j]) ++e;
        ++cong[hits[j]];
        worst_inter = std::max(worst_inter, static_cast<int>(e - j));
        j = e;
      }
      paths.push_back(p);
    }
    int worst = cong.empty() ? 0 : *std::max_element(cong.begin(), cong.end());
    out.attempts = attempt + 1;
    if (worst <= 6.0 * ell) {
      out.paths = std::move(paths);
      out.congestion = std::move(cong);
      out.max_intersection = worst_inter;
      out.accepted = true;
      return out;
    }
    out.rejected_max_congestion.push_back(worst);
  }
  return out;
}

TripleSampler::TripleSampler(const BalancedDual& dual, int x_size) : dual_(&dual), q_(x_size) {
  require(static_cast<int>(dual.rho.size()) == q_, "dual does not match X");
  double acc = 0.0;
  for (double r : dual.rho) rho_cum_.push_back(acc += std::max(0.0, r));
  require(acc > 0.0, "triple sampling needs rho > 0");
  gamma_sum_.assign(static_cast<std::size_t>(q_) * q_, 0.0);
  gamma_of_pair_.assign(static_cast<std::size_t>(q_) * q_, {});
  for (std::size_t i = 0; i < dual.gamma.size(); ++i) {
    const auto& t = dual.gamma[i];
    gamma_sum_[t.u * q_ + t.v] += t.weight;
    gamma_of_pair_[t.u * q_ + t.v].push_back(static_cast<int>(i));
  }
}

double TripleSampler::empty_probability(int u, int v) const {
  double eta = std::max(0.0, dual_->eta[u * q_ + v]);
  double gam = gamma_sum_[u * q_ + v];
  if (eta + gam <= 0.0) return 1.0;
  return eta / (eta + gam);
}

SampledTriple TripleSampler::draw(std::mt19937_64& rng) const {
  SampledTriple t;
  t.u = pick(rho_cum_, unit_draw(rng));
  t.v = static_cast<int>(unit_draw(rng) * q_);
  if (t.v >= q_) t.v = q_ - 1;
  double coin = unit_draw(rng);
  if (coin < empty_probability(t.u, t.v)) return t;
  const auto& ids = gamma_of_pair_[t.u * q_ + t.v];
  std::vector<double> cum;
  double acc = 0.0;
  for (int i : ids) cum.push_back(acc += dual_->gamma[i].weight);
  t.gamma = ids[pick(cum, unit_draw(rng))];
  return t;
}

int dense_subgraph_min_ell(double f, int n, int x_size) {
  return static_cast<int>(std::ceil(7.0 * (f * std::log2(std::max(2, n)) + x_size + 2) - 1e-9));
}

SampledSubgraph sample_dense_subgraph(const Graph& g, const LayeredFamily& fam,
                                      const BalancedLpSolution& sol, int ell, std::uint64_t seed,
                                      int max_attempts) {
  require(sol.mode == LpMode::exact, "subgraph sampling needs an exact-mode dual");
  require(sol.objective > 0.0, "subgraph sampling needs a positive LP optimum");
  int q = static_cast<int>(sol.x_set.size());
  require(ell >= dense_subgraph_min_ell(sol.objective, g.num_vertices(), q),
          "ell is below 7 (f log n + |X| + 2)");
  TripleSampler sampler(sol.dual, q);
  SampledSubgraph out;
  out.ell = ell;
  out.f = sol.objective;
  out.seed = seed;
  out.bound = 1.0 + (3.0 * ell / (5.0 * out.f)) * (2 * fam.thickness() - 1);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::vector<SampledTriple> triples;
    VertexSet vs = sol.x_set;
    for (int i = 0; i < ell; ++i) {
      auto t = sampler.draw(rng);
      if (t.gamma >= 0) {
        const auto& p = sol.dual.gamma[t.gamma].path;
        vs.insert(vs.end(), p.begin(), p.end());
      }
      triples.push_back(t);
    }
    vs = make_set(std::move(vs));
    std::vector<int> mem(static_cast<std::size_t>(fam.num_sets()), 0);
    for (Vertex v : vs)
      for (int s : fam.sets_containing(v)) ++mem[s];
    out.attempts = attempt + 1;
    bool ok = std::all_of(mem.begin(), mem.end(), [&](int c) { return c <= out.bound + 1e-9; });
    if (ok) {
      out.vertices = vs;
      out.h = induced_subgraph(g, vs);
      out.triples = std::move(triples);
      out.membership = std::move(mem);
      out.accepted = true;
      return out;
    }
  }
  return out;
}

std::pair<VertexSet, VertexSet> split_balanced_to_two_sided(const Graph& g, const VertexSet& a,
                                                            const VertexSet& s) {
  check_vertices(g, a, "A");
  check_vertices(g, s, "S");
  int total = static_cast<int>(a.size());
  auto comps = components_without(g, membership(g.num_vertices(), s));
  std::vector<std::pair<int, std::size_t>> sizes;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    int c = static_cast<int>(set_intersection(comps[i], a).size());
    require(2 * c <= total, "S is not an (A,1/2)-balanced separator");
    if (c > 0) sizes.emplace_back(c, i);
  }
  VertexSet a1;
  VertexSet in_s = set_intersection(a, s);
  if (2 * static_cast<int>(in_s.size()) >= total) {
    a1.assign(in_s.begin(), in_s.begin() + (total + 1) / 2);
  } else {
    std::stable_sort(sizes.begin(), sizes.end(), [](auto x, auto y) { return x.first > y.first; });
    int acc = 0;
    for (auto [c, i] : sizes) {
      if (3 * acc >= total) break;
      auto part = set_intersection(comps[i], a);
      a1.insert(a1.end(), part.begin(), part.end());
      acc += c;
    }
    a1 = make_set(std::move(a1));
  }
  return {a1, set_difference(a, a1)};
}

CoverAudit audit_cover_lower_bound(const LayeredFamily& fam, const VertexSet& hv, int size,
                                   const std::function<bool(const VertexSet&)>& bad,
                                   std::uint64_t budget) {
  CoverAudit out;
  std::vector<int> useful;
  for (int i = 0; i < fam.num_sets(); ++i)
    if (!set_intersection(fam.members(i), hv).empty()) useful.push_back(i);
  int m = static_cast<int>(useful.size());
  size = std::clamp(size, 0, m);
  std::vector<int> idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    if (out.checked >= budget) {
      out.exhaustive = false;
      return out;
    }
    ++out.checked;
    VertexSet u;
    for (int i : idx) u = set_union(u, fam.members(useful[i]));
    if (bad(set_intersection(u, hv))) {
      out.ok = false;
      for (int i : idx) out.counterexample.push_back(useful[i]);
      return out;
    }
    int j = size - 1;
    while (j >= 0 && idx[j] == m - size + j) --j;
    if (j < 0) break;
    ++idx[j];
    for (int k = j + 1; k < size; ++k) idx[k] = idx[k - 1] + 1;
  }
  return out;
}

CoverAudit audit_balanced_separators(const Graph& g, const LayeredFamily& fam, const VertexSet& hv,
                                     const VertexSet& xs, double f, std::uint64_t budget) {
  int n = g.num_vertices();
  auto outside = membership(n, hv);
  for (auto& c : outside) c = !c;
  int below = static_cast<int>(std::ceil(f - 1e-9)) - 1;
  auto bad = [&](const VertexSet& s) {
    auto removed = outside;
    for (Vertex v : s) removed[v] = 1;
    for (const auto& comp : components_without(g, removed))
      if (2 * set_intersection(comp, xs).size() > xs.size()) return false;
    return true;
  };
  if (below < 0) return {};
  return audit_cover_lower_bound(fam, hv, below, bad, budget);
}

}  // namespace coarse
