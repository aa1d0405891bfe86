#include "coarse/json_io.hpp"

#include <cmath>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

json partition_parts(const OrderedPartition& pi) { return pi.parts; }

json paths_json(const std::vector<Path>& ps) { return ps; }

json ledger_json(const BoundLedger& l) {
  return {{"lp_objective", l.lp_objective}, {"thickness", l.thickness}, {"n", l.n},
          {"claimed_bound", l.claimed_bound}, {"achieved", l.achieved}, {"satisfied", l.satisfied}};
}

VertexSet read_set(const json& j, const char* key) {
  require(j.contains(key), std::string("artifact lacks '") + key + "'");
  return make_set(j.at(key).get<std::vector<Vertex>>());
}

LayeredFamily family_from(const Graph& g, const json& j) {
  require(j.contains("partition"), "artifact lacks 'partition'");
  auto parts = j.at("partition").get<std::vector<VertexSet>>();
  return build_layered_family(g, make_ordered_partition(g, std::move(parts)));
}

}  // namespace

json to_json(const RadiusPartition& rp) {
  json w = json::array();
  for (const auto& c : rp.witnesses)
    w.push_back({{"part", c.part}, {"component", c.component}, {"center", c.center},
                 {"radius_vertices", c.radius_vertices}});
  return {{"kind", "radius-partition"}, {"parts", rp.parts}, {"witnesses", w}};
}

json to_json(const LayeredFamily& fam) {
  json sets = json::array();
  for (int i = 0; i < fam.num_sets(); ++i) sets.push_back({{"center", fam.center(i)}, {"members", fam.members(i)}});
  return {{"kind", "family"}, {"partition", partition_parts(fam.partition())}, {"thickness", fam.thickness()},
          {"sets", sets}};
}

json to_json(const AbLpSolution& sol) {
  json dual = json::array();
  for (const auto& wp : sol.dual) dual.push_back({{"path", wp.path}, {"weight", wp.weight}});
  std::string status = sol.status == LpStatus::optimal ? "optimal"
                       : sol.status == LpStatus::unreachable ? "unreachable" : "overflow";
  return {{"kind", "ab-lp"}, {"mode", to_string(sol.mode)}, {"status", status}, {"a", sol.a}, {"b", sol.b},
          {"x", sol.x}, {"objective", sol.objective}, {"dual", dual}, {"dual_objective", sol.dual_objective},
          {"columns", sol.columns}, {"minimality_warning", sol.minimality_warning}};
}

json to_json(const BalancedLpSolution& sol) {
  json gamma = json::array();
  for (const auto& t : sol.dual.gamma) gamma.push_back({{"u", t.u}, {"v", t.v}, {"path", t.path}, {"weight", t.weight}});
  std::string status = sol.status == LpStatus::optimal ? "optimal"
                       : sol.status == LpStatus::unreachable ? "unreachable" : "overflow";
  return {{"kind", "balanced-lp"}, {"mode", to_string(sol.mode)}, {"status", status}, {"x_set", sol.x_set},
          {"x", sol.x}, {"d", sol.d}, {"objective", sol.objective},
          {"dual", {{"rho", sol.dual.rho}, {"eta", sol.dual.eta}, {"gamma", gamma}, {"objective", sol.dual.objective}}},
          {"columns", sol.columns}, {"minimality_warning", sol.minimality_warning}};
}

json to_json(const SeparatorCertificate& cert) {
  json rounds = json::array();
  for (const auto& r : cert.rounds)
    rounds.push_back({{"u_bar", r.u_bar}, {"heavy_size", r.heavy_size}, {"heavy_x", r.heavy_x}, {"ell", r.ell},
                      {"r_ell", r.r_ell}, {"mu_ball", r.mu_ball}, {"mu_boundary", r.mu_boundary},
                      {"mu_next_ball", r.mu_next_ball}, {"local", r.local}, {"additive", r.additive},
                      {"added", r.added}, {"a_x", r.a_x}, {"b_size", r.b_size}});
  json j = {{"kind", "separator"}, {"separator_kind", cert.kind}, {"separator", cert.separator},
            {"fcov", cert.fcov.value}, {"centers", cert.cover_centers}, {"radius_vertices", cert.radius_vertices},
            {"ledger", ledger_json(cert.ledger)}, {"rounds", rounds}};
  if (cert.kind == "ab") {
    j["a"] = cert.a;
    j["b"] = cert.b;
    j["threshold"] = cert.threshold;
    j["used_raw_weights"] = cert.used_raw_weights;
  } else {
    j["x_set"] = cert.x_set;
  }
  return j;
}

json to_json(const PathPacking& pk) {
  return {{"kind", "path-multiset"}, {"paths", paths_json(pk.paths)}, {"congestion", pk.congestion},
          {"max_intersection", pk.max_intersection}, {"target", pk.target}, {"f", pk.f}, {"ell", pk.ell},
          {"seed", pk.seed}, {"attempts", pk.attempts}, {"accepted", pk.accepted},
          {"rejected_max_congestion", pk.rejected_max_congestion}};
}

json to_json(const SampledSubgraph& sub) {
  json triples = json::array();
  for (const auto& t : sub.triples) triples.push_back({{"u", t.u}, {"v", t.v}, {"gamma", t.gamma}});
  return {{"kind", "sampled-subgraph"}, {"vertices", sub.vertices}, {"triples", triples},
          {"membership", sub.membership}, {"bound", sub.bound}, {"ell", sub.ell}, {"f", sub.f},
          {"seed", sub.seed}, {"attempts", sub.attempts}, {"accepted", sub.accepted}};
}

json to_json(const TreeDecomposition& td, const std::vector<BagQuality>* quality) {
  json nodes = json::array();
  for (const auto& nd : td.nodes) {
    json o = {{"id", nd.id}, {"witnesses", nd.witnesses}, {"bag", nd.bag}};
    o["parent"] = nd.parent < 0 ? json(nullptr) : json(nd.parent);
    nodes.push_back(o);
  }
  const auto& l = td.ledger;
  json j = {{"kind", "tree-decomposition"}, {"root", td.root}, {"nodes", nodes},
            {"ledger", {{"pad_cap", l.pad_cap}, {"theoretical_pad_cap", l.theoretical_pad_cap},
                        {"leaf_fallbacks", l.leaf_fallbacks}, {"max_separator", l.max_separator},
                        {"max_witnesses", l.max_witnesses}, {"x0_size", l.x0_size},
                        {"lp_objectives", l.lp_objectives}}}};
  if (quality) {
    json q = json::array();
    for (const auto& b : *quality) {
      json o = {{"node", b.node}, {"witness_count", b.witness_count}, {"centers", b.centers},
                {"radius_vertices", b.radius_vertices}, {"cover_verified", b.cover_verified}};
      if (b.alpha)
        o["alpha"] = {{"radius_edges", 2 * b.radius_vertices}, {"size", b.alpha->size},
                      {"witness", b.alpha->witness}, {"exact", b.alpha->exact}};
      q.push_back(o);
    }
    j["quality"] = q;
  }
  return j;
}

json to_json(const MengerResult& res, const VertexSet& a, const VertexSet& b) {
  json j = {{"kind", "menger"}, {"k", res.k}, {"a", a}, {"b", b}};
  if (res.has_paths) j["paths"] = paths_json(res.paths);
  else j["separator"] = res.separator;
  return j;
}

json to_json(const CleaningStep& st) {
  return {{"kind", "cleaning-step"}, {"f", st.f}, {"s", st.s}, {"parts", st.parts}, {"i_o", st.i_o},
          {"floor_f_over_s", st.floor_f_over_s}, {"clean_before", st.clean_before},
          {"clean_after", st.clean_after}, {"s_after", st.s_after}, {"flow_h", st.flow_h},
          {"h_vertices", st.h_vertices}, {"quotient_paths", paths_json(st.quotient_paths)},
          {"lifted_paths", paths_json(st.lifted_paths)}};
}

json to_json(const InducedMengerOutcome& res, const VertexSet& a, const VertexSet& b, int k) {
  json levels = json::array();
  for (const auto& l : res.levels)
    levels.push_back({{"z", l.z}, {"ell", l.ell}, {"s", l.s}, {"g", l.g_value}, {"threshold", l.threshold},
                      {"min_separator", l.min_separator}, {"branch", l.branch},
                      {"base_max_degree", l.base_max_degree}, {"n", l.n}});
  json steps = json::array();
  for (const auto& st : res.steps) steps.push_back(to_json(st));
  json j = {{"kind", "induced-menger"}, {"verdict", to_string(res.verdict)}, {"k", k}, {"a", a}, {"b", b},
            {"levels", levels}, {"steps", steps}};
  if (res.verdict == MengerVerdict::packing) j["paths"] = paths_json(res.paths);
  if (res.verdict == MengerVerdict::separator) j["separator"] = res.separator;
  return j;
}

json to_json(const MengerPipelineResult& res, const VertexSet& a, const VertexSet& b, int k) {
  json j = {{"kind", "menger-pipeline"}, {"result", res.kind}, {"k", k}, {"a", a}, {"b", b},
            {"n_quotient", res.n_quotient}, {"d", res.d}, {"d_provenance", "computed degeneracy of the quotient"},
            {"thickness", res.thickness}, {"delta_tilde", res.delta_tilde}, {"mu_tilde", res.mu_tilde},
            {"g_tilde", res.g_tilde}, {"f", res.f}, {"notes", res.notes},
            {"aux_branch", res.aux.separator_branch ? "separator" : "dense"}};
  if (res.kind == "packing") {
    j["paths"] = paths_json(res.paths);
    j["packing_verified"] = res.packing_verified;
  } else {
    j["separator"] = res.separator;
    j["centers"] = res.centers;
    j["radius_vertices"] = res.radius_vertices;
    j["independence_radius"] = res.independence_radius;
    j["separation_verified"] = res.separation_verified;
    j["cover_verified"] = res.cover_verified;
    if (res.alpha)
      j["alpha"] = {{"size", res.alpha->size}, {"witness", res.alpha->witness}, {"exact", res.alpha->exact}};
  }
  if (!res.aux.separator_branch && res.aux.packing.accepted) {
    j["dense"] = {{"h_vertices", res.aux.h_vertices}, {"h_max_degree", res.aux.h_max_degree},
                  {"degree_bound", res.aux.degree_bound}, {"degree_ok", res.aux.degree_ok}};
  }
  return j;
}

json to_json(const CenterSeparator& sep) {
  json j = {{"kind", "center-separator"}, {"rounded", sep.rounded}, {"centers", sep.centers},
            {"expanded", sep.expanded}, {"lp_objective", sep.lp_objective}, {"f_threshold", sep.f_threshold},
            {"claimed_bound", sep.claimed_bound}, {"balanced", sep.balanced}};
  if (sep.rounded) j["certificate"] = to_json(sep.cert);
  if (sep.sampled) {
    j["sampled"] = to_json(*sep.sampled);
    j["h_max_degree"] = sep.h_max_degree;
    j["h_degeneracy"] = sep.h_degeneracy;
  }
  return j;
}

json to_json(const KttExtraction& ex, int t) {
  json layers = json::array();
  for (const auto& l : ex.layers) layers.push_back({{"layer", l.layer}, {"t", l.t}, {"m", l.m}, {"b", l.b}});
  json j = {{"kind", "minor-model"}, {"t", t}, {"layers", layers}, {"u", ex.u}, {"failure", ex.failure}};
  if (ex.model) j["model"] = {{"side_a", ex.model->side_a}, {"side_b", ex.model->side_b}};
  return j;
}

TreeDecomposition tree_decomposition_from_json(const json& j) {
  TreeDecomposition td;
  td.root = j.at("root").get<int>();
  for (const auto& o : j.at("nodes")) {
    TdNode nd;
    nd.id = o.at("id").get<int>();
    nd.parent = o.at("parent").is_null() ? -1 : o.at("parent").get<int>();
    nd.witnesses = make_set(o.at("witnesses").get<std::vector<Vertex>>());
    nd.bag = make_set(o.at("bag").get<std::vector<Vertex>>());
    td.nodes.push_back(std::move(nd));
  }
  return td;
}

namespace {

VerifyReport verify_impl(const Graph& g, const json& j) {
  VerifyReport rep;
  rep.kind = j.value("kind", "");
  auto bad = [&](std::string msg) {
    rep.ok = false;
    rep.message = std::move(msg);
    return rep;
  };
  std::string why;
  const std::string& kind = rep.kind;

  if (kind == "radius-partition") {
    RadiusPartition rp;
    rp.parts = j.at("parts").get<std::vector<VertexSet>>();
    for (const auto& w : j.at("witnesses"))
      rp.witnesses.push_back({w.at("part").get<int>(), make_set(w.at("component").get<std::vector<Vertex>>()),
                              w.at("center").get<Vertex>(), w.at("radius_vertices").get<int>()});
    if (!verify_radius_partition(g, rp, &why)) return bad(why);
    return rep;
  }
  if (kind == "family") {
    auto fam = family_from(g, j);
    const auto& sets = j.at("sets");
    if (static_cast<int>(sets.size()) != fam.num_sets()) return bad("set count differs from the rebuilt family");
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].at("center").get<Vertex>() != fam.center(static_cast<int>(i))) return bad("center mismatch");
      if (make_set(sets[i].at("members").get<std::vector<Vertex>>()) != fam.members(static_cast<int>(i)))
        return bad("set of center " + std::to_string(fam.center(static_cast<int>(i))) + " differs");
    }
    if (j.at("thickness").get<int>() != fam.thickness()) return bad("thickness differs");
    return rep;
  }
  if (kind == "separator") {
    auto s = read_set(j, "separator");
    check_vertices(g, s, "separator");
    auto centers = read_set(j, "centers");
    int radius = j.at("radius_vertices").get<int>();
    if (j.at("separator_kind") == "ab") {
      if (!separates(g, read_set(j, "a"), read_set(j, "b"), s)) return bad("separator does not separate A from B");
    } else if (!is_balanced_separator(g, read_set(j, "x_set"), s, 0.95)) {
      return bad("separator is not (X, 95/100)-balanced");
    }
    if (!covered_within(g, s, centers, radius)) return bad("separator is not covered by the recorded centers");
    return rep;
  }
  if (kind == "tree-decomposition") {
    auto td = tree_decomposition_from_json(j);
    auto r = validate_tree_decomposition(g, td);
    if (!r.ok) return bad("tree axiom " + std::to_string(r.violation) + " violated: " + r.message);
    if (j.contains("quality"))
      for (const auto& q : j.at("quality")) {
        int node = q.at("node").get<int>();
        if (node < 0 || node >= static_cast<int>(td.nodes.size())) return bad("quality entry names no node");
        if (!covered_within(g, td.nodes[node].bag, make_set(q.at("centers").get<std::vector<Vertex>>()),
                            q.at("radius_vertices").get<int>()))
          return bad("bag of node " + std::to_string(node) + " is not covered at the recorded radius");
      }
    return rep;
  }
  if (kind == "menger") {
    auto a = read_set(j, "a"), b = read_set(j, "b");
    int k = j.at("k").get<int>();
    if (j.contains("paths")) {
      auto ps = j.at("paths").get<std::vector<Path>>();
      if (static_cast<int>(ps.size()) != k) return bad("path count differs from k");
      if (!verify_disjoint_paths(g, a, b, ps, &why)) return bad(why);
    } else {
      auto s = read_set(j, "separator");
      if (static_cast<int>(s.size()) >= k) return bad("separator is not smaller than k");
      if (!separates(g, a, b, s)) return bad("separator does not separate A from B");
    }
    return rep;
  }
  if (kind == "induced-menger" || kind == "menger-pipeline") {
    auto a = read_set(j, "a"), b = read_set(j, "b");
    int k = j.at("k").get<int>();
    bool packing = kind == "induced-menger" ? j.at("verdict") == "packing" : j.at("result") == "packing";
    if (packing) {
      auto ps = j.at("paths").get<std::vector<Path>>();
      if (static_cast<int>(ps.size()) < k) return bad("fewer than k paths");
      if (!verify_anticomplete_packing(g, a, b, ps, &why)) return bad(why);
      return rep;
    }
    if (!j.contains("separator")) return rep;  // inconclusive
    auto s = read_set(j, "separator");
    if (!separates(g, a, b, s)) return bad("separator does not separate A from B");
    if (kind == "menger-pipeline") {
      auto centers = read_set(j, "centers");
      if (!covered_within(g, s, centers, j.at("radius_vertices").get<int>()))
        return bad("separator is not covered by the recorded centers");
      if (j.contains("alpha")) {
        auto wit = make_set(j.at("alpha").at("witness").get<std::vector<Vertex>>());
        int r = j.at("independence_radius").get<int>();
        for (Vertex v : wit) {
          if (!set_contains(s, v)) return bad("independence witness leaves the separator");
          auto dist = hop_distances(g, std::span<const Vertex>(&v, 1));
          for (Vertex w : wit)
            if (w != v && dist[w] != kUnreachable && dist[w] <= r) return bad("independence witness is not scattered");
        }
        if (wit.size() > centers.size()) return bad("independence number exceeds the center count");
      }
    }
    return rep;
  }
  if (kind == "cleaning-step") {
    auto lifted = j.at("lifted_paths").get<std::vector<Path>>();
    if (static_cast<long long>(lifted.size()) != j.at("floor_f_over_s").get<long long>() + 1)
      return bad("path count differs from floor(f/s) + 1");
    std::vector<char> used(static_cast<std::size_t>(g.num_vertices()), 0);
    for (const auto& p : lifted) {
      if (!is_induced_path(g, p)) return bad("lifted path is not induced");
      for (Vertex v : p) {
        if (used[v]) return bad("lifted paths share a vertex");
        used[v] = 1;
      }
    }
    if (j.at("clean_after").get<int>() <= j.at("clean_before").get<int>()) return bad("clean count did not grow");
    return rep;
  }
  if (kind == "minor-model") {
    if (!j.contains("model")) return rep;
    MinorModel m;
    m.t = j.at("t").get<int>();
    m.side_a = j.at("model").at("side_a").get<std::vector<VertexSet>>();
    m.side_b = j.at("model").at("side_b").get<std::vector<VertexSet>>();
    if (!verify_minor_model(g, m, m.t, &why)) return bad(why);
    return rep;
  }
  if (kind == "ab-lp") {
    auto a = read_set(j, "a"), b = read_set(j, "b");
    double total = 0.0;
    for (double x : j.at("x").get<std::vector<double>>()) {
      if (x < -1e-9) return bad("negative set weight");
      total += x;
    }
    if (std::abs(total - j.at("objective").get<double>()) > 1e-6) return bad("objective differs from the weight sum");
    auto in_a = membership(g.num_vertices(), a), in_b = membership(g.num_vertices(), b);
    for (const auto& wp : j.at("dual")) {
      auto p = wp.at("path").get<Path>();
      if (p.empty() || !is_path(g, p) || !in_a[p.front()] || !in_b[p.back()]) return bad("dual path is not an A-B path");
    }
    return rep;
  }
  if (kind == "center-separator") {
    if (!j.at("rounded").get<bool>()) return rep;
    const auto& cert = j.at("certificate");
    auto s = read_set(j, "expanded");
    if (!is_balanced_separator(g, read_set(cert, "x_set"), s, 0.95)) return bad("expanded set is not balanced");
    return rep;
  }
  if (kind == "balanced-lp" || kind == "path-multiset" || kind == "sampled-subgraph") {
    if (kind == "path-multiset")
      for (const auto& p : j.at("paths").get<std::vector<Path>>())
        if (!is_induced_path(g, p)) return bad("sampled path is not induced");
    if (kind == "sampled-subgraph") {
      const auto& m = j.at("membership");
      double bound = j.at("bound").get<double>();
      for (const auto& c : m)
        if (c.get<int>() > bound + 1e-9) return bad("a set meets V(H) more often than the bound");
      check_vertices(g, j.at("vertices").get<std::vector<Vertex>>(), "V(H)");
    }
    return rep;
  }
  throw ValidationError("unknown artifact kind '" + kind + "'");
}

}  // namespace

VerifyReport verify_artifact(const Graph& g, const json& j) {
  require(j.is_object() && j.contains("kind"), "artifact has no 'kind' field");
  try {
    return verify_impl(g, j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("artifact schema mismatch: ") + e.what());
  }
}

}  // namespace coarse
