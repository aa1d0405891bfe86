#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "coarse/decomposition.hpp"
#include "coarse/errors.hpp"
#include "coarse/family.hpp"
#include "coarse/generators.hpp"
#include "coarse/json_io.hpp"
#include "coarse/lp.hpp"
#include "coarse/menger.hpp"
#include "coarse/partition.hpp"
#include "coarse/rounding.hpp"
#include "coarse/sampling.hpp"

namespace coarse::cli {

namespace {

const std::vector<std::string> kCommands = {
    "partition",   "family",          "lp-ab",     "round-ab",    "lp-balanced", "round-balanced", "sample-paths",
    "sample-subgraph", "treedecomp", "pipeline-tw", "menger",    "pipeline-menger", "verify",       "gen"};

std::string usage() {
  std::string u = "usage: coarse-decomp <command> [options]\ncommands:";
  for (const auto& c : kCommands) u += " " + c;
  return u + "\nrun 'coarse-decomp <command> --help' for the options of a command\n";
}

VertexSet parse_list(const std::string& s, const char* what) {
  VertexSet out;
  std::string tok;
  std::stringstream ss(s);
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      require(used == tok.size() && v >= 0, "");
      out.push_back(static_cast<Vertex>(v));
    } catch (const std::exception&) {
      throw ValidationError(std::string("bad vertex id '") + tok + "' in " + what);
    }
  }
  return make_set(std::move(out));
}

struct Loaded {
  Graph g;
  VertexSet a, b;  // from "# A ..." / "# B ..." comment lines
};

Loaded load_graph(const std::string& path) {
  require(!path.empty(), "--graph is required");
  std::string text;
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    text = os.str();
  } else {
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot open graph file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  Loaded out;
  out.g = parse_edge_list(text);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    std::string hash, tag;
    ls >> hash >> tag;
    if (hash != "#" || (tag != "A" && tag != "B")) continue;
    VertexSet s;
    int v;
    while (ls >> v) s.push_back(v);
    (tag == "A" ? out.a : out.b) = make_set(std::move(s));
  }
  check_vertices(out.g, out.a, "A");
  check_vertices(out.g, out.b, "B");
  return out;
}

VertexSet terminals(const std::string& flag, const VertexSet& fallback, const Graph& g, const char* what) {
  VertexSet s = flag.empty() ? fallback : parse_list(flag, what);
  require(!s.empty(), std::string(what) + " is empty; pass --" + (what[0] == 'A' ? "a" : "b"));
  check_vertices(g, s, what);
  return s;
}

LayeredFamily default_family(const Graph& g, const RunConfig& cfg) {
  int d = cfg.d.value_or(degeneracy(g));
  return build_layered_family(g, degeneracy_layering(g, d));
}

LpOptions lp_options(const RunConfig& cfg) {
  LpOptions o;
  o.tol = cfg.tol;
  o.path_cap = cfg.path_cap;
  return o;
}

AbLpSolution ab_lp(const Graph& g, const LayeredFamily& fam, const VertexSet& a, const VertexSet& b,
                   const RunConfig& cfg) {
  return solve_ab_lp(g, fam, a, b, parse_lp_mode(cfg.mode), lp_options(cfg));
}

BalancedLpSolution balanced_lp(const Graph& g, const LayeredFamily& fam, const VertexSet& x, const RunConfig& cfg) {
  return solve_balanced_lp(g, fam, x, parse_lp_mode(cfg.mode), lp_options(cfg));
}

InducedBranch parse_induced_branch(const std::string& s) {
  if (s == "auto") return InducedBranch::automatic;
  if (s == "separator") return InducedBranch::separator;
  if (s == "clean") return InducedBranch::clean;
  throw ValidationError("unknown induced branch '" + s + "'");
}

struct Outcome {
  json artifact;
  std::string summary;
  int code = kOk;
};

Outcome cmd_gen(const RunConfig& cfg) {
  require(!cfg.gen.empty(), "gen needs a kind, e.g. --grid 3 3");
  const std::string& kind = cfg.gen[0];
  auto num = [&](std::size_t i) {
    require(i < cfg.gen.size(), "missing parameter for " + kind);
    try {
      return std::stod(cfg.gen[i]);
    } catch (const std::exception&) {
      throw ValidationError("bad parameter '" + cfg.gen[i] + "' for " + kind);
    }
  };
  auto integer = [&](std::size_t i) {
    double v = num(i);
    require(v == std::floor(v) && v >= 0 && v <= 1e6, "parameter of " + kind + " must be a small integer");
    return static_cast<int>(v);
  };
  Fixture f;
  if (kind == "gnp") f = generate(kind, integer(1), 0, num(2), cfg.seed);
  else if (kind == "path" || kind == "star" || kind == "cycle") f = generate(kind, integer(1), 0, 0.0, cfg.seed);
  else f = generate(kind, integer(1), integer(2), 0.0, cfg.seed);
  Outcome o;
  std::string text = write_edge_list(f.g);
  auto line = [](const char* tag, const VertexSet& s) {
    std::string l = std::string("# ") + tag;
    for (Vertex v : s) l += " " + std::to_string(v);
    return l + "\n";
  };
  if (!f.a.empty()) text = line("A", f.a) + line("B", f.b) + text;
  o.artifact = text;
  o.summary = kind + ": " + std::to_string(f.g.num_vertices()) + " vertices, " + std::to_string(f.g.num_edges()) +
              " edges";
  return o;
}

Outcome dispatch(const RunConfig& cfg) {
  if (cfg.command == "gen") return cmd_gen(cfg);
  Loaded in = load_graph(cfg.graph_path);
  const Graph& g = in.g;
  int n = g.num_vertices();
  Outcome o;
  const std::string& c = cfg.command;

  if (c == "verify") {
    require(!cfg.cert_path.empty(), "--cert is required");
    std::ifstream f(cfg.cert_path);
    require(static_cast<bool>(f), "cannot open certificate '" + cfg.cert_path + "'");
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw ValidationError(std::string("certificate is not JSON: ") + e.what());
    }
    auto rep = verify_artifact(g, j);
    o.artifact = {{"kind", "verify-report"}, {"artifact_kind", rep.kind}, {"ok", rep.ok}, {"message", rep.message}};
    o.summary = rep.ok ? "verified " + rep.kind : "FAILED " + rep.kind + ": " + rep.message;
    o.code = rep.ok ? kOk : kValidation;
    return o;
  }
  if (c == "partition") {
    if (cfg.ktt) {
      auto ex = extract_ktt_model(g, cfg.t);
      o.artifact = to_json(ex, cfg.t);
      o.summary = ex.model ? "induced K_{" + std::to_string(cfg.t) + "," + std::to_string(cfg.t) + "} model found"
                           : "no model assembled: " + ex.failure;
      return o;
    }
    auto rp = greedy_four_radius_partition(g);
    o.artifact = to_json(rp);
    o.summary = std::to_string(rp.parts.size()) + " parts, " + std::to_string(rp.witnesses.size()) + " components";
    return o;
  }
  auto fam = default_family(g, cfg);
  if (c == "family") {
    o.artifact = to_json(fam);
    o.summary = std::to_string(fam.num_sets()) + " sets, thickness " + std::to_string(fam.thickness());
    return o;
  }
  if (c == "lp-ab" || c == "round-ab" || c == "sample-paths") {
    auto a = terminals(cfg.a, in.a, g, "A"), b = terminals(cfg.b, in.b, g, "B");
    auto sol = ab_lp(g, fam, a, b, cfg);
    if (c == "lp-ab") {
      o.artifact = to_json(sol);
      o.summary = "LP optimum " + std::to_string(sol.objective) + ", dual " + std::to_string(sol.dual_objective);
      if (sol.status == LpStatus::overflow) o.code = kInconclusive;
      return o;
    }
    if (c == "round-ab") {
      auto cert = round_ab_separator(g, fam, sol, cfg.tol);
      o.artifact = to_json(cert);
      o.summary = "separator of " + std::to_string(cert.separator.size()) + " vertices, fcov " +
                  std::to_string(cert.fcov.value);
      return o;
    }
    auto restricted = restrict_dual_to_upward_minimal(g, fam, sol);
    double ell = cfg.ell.value_or(std::max(std::log2(2.0 * n), std::log2(4.0 * fam.num_sets()) / 6.0));
    auto pk = sample_path_multiset(g, fam, restricted, ell, cfg.seed);
    o.artifact = to_json(pk);
    o.summary = pk.accepted ? std::to_string(pk.paths.size()) + " paths after " + std::to_string(pk.attempts) +
                                  " attempts"
                            : "every attempt exceeded the congestion bound";
    if (!pk.accepted) o.code = kInconclusive;
    return o;
  }
  if (c == "lp-balanced" || c == "round-balanced" || c == "sample-subgraph") {
    VertexSet x = parse_list(cfg.x, "X");
    require(!x.empty(), "--x is required");
    check_vertices(g, x, "X");
    auto sol = balanced_lp(g, fam, x, cfg);
    if (c == "lp-balanced") {
      o.artifact = to_json(sol);
      o.summary = "LP optimum " + std::to_string(sol.objective);
      if (sol.status == LpStatus::overflow) o.code = kInconclusive;
      return o;
    }
    if (c == "round-balanced") {
      auto cert = round_balanced_separator(g, fam, sol, lp_options(cfg));
      o.artifact = to_json(cert);
      o.summary = "balanced separator of " + std::to_string(cert.separator.size()) + " vertices in " +
                  std::to_string(cert.rounds.size()) + " rounds";
      return o;
    }
    int ell = cfg.ell ? static_cast<int>(std::ceil(*cfg.ell))
                      : dense_subgraph_min_ell(sol.objective, n, static_cast<int>(x.size()));
    auto sub = sample_dense_subgraph(g, fam, sol, ell, cfg.seed);
    o.artifact = to_json(sub);
    o.summary = sub.accepted ? "H has " + std::to_string(sub.vertices.size()) + " vertices"
                             : "every attempt exceeded the membership bound";
    if (!sub.accepted) o.code = kInconclusive;
    return o;
  }
  if (c == "treedecomp") {
    TreeDecompositionOptions opts;
    opts.pad_cap = cfg.pad_cap;
    opts.separator.branch = parse_branch(cfg.branch);
    opts.separator.seed = cfg.seed;
    opts.separator.lp = lp_options(cfg);
    VertexSet x0 = parse_list(cfg.x, "X0");
    auto td = build_tree_decomposition(g, fam, x0, opts);
    auto rep = validate_tree_decomposition(g, td, &fam);
    ensure(rep.ok, "decomposition failed validation: " + rep.message);
    o.artifact = to_json(td);
    o.summary = std::to_string(td.nodes.size()) + " nodes, largest witness set " +
                std::to_string(td.ledger.max_witnesses);
    return o;
  }
  if (c == "pipeline-tw") {
    TreewidthPipelineOptions opts;
    opts.td.pad_cap = cfg.pad_cap;
    opts.td.separator.seed = cfg.seed;
    opts.td.separator.lp = lp_options(cfg);
    auto res = coarse_treewidth_pipeline(g, cfg.t, opts);
    o.artifact = to_json(res.td, &res.quality);
    o.artifact["n_quotient"] = res.n_quotient;
    o.artifact["d"] = res.d;
    o.artifact["thickness"] = res.thickness;
    o.summary = std::to_string(res.td.nodes.size()) + " nodes, lifted radius " +
                std::to_string(res.radius_vertices) + " vertices";
    return o;
  }
  if (c == "menger") {
    auto a = terminals(cfg.a, in.a, g, "A"), b = terminals(cfg.b, in.b, g, "B");
    if (!cfg.induced) {
      auto res = menger_max_flow(g, a, b, cfg.k);
      o.artifact = to_json(res, a, b);
      o.summary = res.has_paths ? std::to_string(cfg.k) + " disjoint paths"
                                : "separator of " + std::to_string(res.separator.size()) + " vertices";
      return o;
    }
    std::optional<EdgePartition> loaded;
    if (!cfg.edge_partition_path.empty()) {
      std::ifstream f(cfg.edge_partition_path);
      require(static_cast<bool>(f), "cannot open edge partition '" + cfg.edge_partition_path + "'");
      try {
        auto parts = json::parse(f).get<std::vector<std::vector<Edge>>>();
        loaded = classify_parts(g, std::move(parts));
      } catch (const json::exception& e) {
        throw ValidationError(std::string("edge partition is not a list of edge lists: ") + e.what());
      }
    }
    RecursionOptions ro;
    ro.branch = parse_induced_branch(cfg.induced_branch);
    ro.budget = cfg.budget;
    auto res = degree_dependent_menger(g, cfg.t, a, b, cfg.k, loaded, ro);
    o.artifact = to_json(res.outcome, a, b, cfg.k);
    o.artifact["max_degree"] = res.max_degree;
    o.artifact["mu"] = res.mu;
    o.artifact["g_degree"] = res.g_value;
    o.summary = "induced Menger: " + to_string(res.outcome.verdict);
    if (res.outcome.verdict == MengerVerdict::inconclusive) o.code = kInconclusive;
    return o;
  }
  if (c == "pipeline-menger") {
    auto a = terminals(cfg.a, in.a, g, "A"), b = terminals(cfg.b, in.b, g, "B");
    MengerPipelineOptions opts;
    opts.branch = parse_branch(cfg.branch);
    opts.seed = cfg.seed;
    opts.lp = lp_options(cfg);
    opts.recursion.branch = parse_induced_branch(cfg.induced_branch);
    opts.recursion.budget = cfg.budget;
    auto res = coarse_menger_pipeline(g, cfg.t, a, b, cfg.k, opts);
    o.artifact = to_json(res, a, b, cfg.k);
    o.summary = res.kind == "packing"
                    ? std::to_string(res.paths.size()) + " anticomplete paths"
                    : "separator of " + std::to_string(res.separator.size()) + " vertices, " +
                          std::to_string(res.centers.size()) + " centers";
    return o;
  }
  throw ValidationError("unknown command '" + c + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || std::find(kCommands.begin(), kCommands.end(), args[0]) == kCommands.end()) {
    if (!args.empty() && (args[0] == "--help" || args[0] == "-h")) {
      out << usage();
      return kOk;
    }
    err << (args.empty() ? "missing command\n" : "unknown command '" + args[0] + "'\n") << usage();
    return kUsage;
  }
  RunConfig cfg;
  cfg.command = args[0];
  CLI::App app{"coarse-decomp " + cfg.command};
  app.add_option("--graph,-g", cfg.graph_path, "edge-list file, '-' for standard input");
  app.add_option("--out,-o", cfg.out_path, "write the JSON artifact here");
  app.add_option("--seed", cfg.seed, "64-bit seed for randomized commands");
  app.add_option("--mode", cfg.mode, "LP mode: exact or fast");
  app.add_option("--tol", cfg.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--path-cap", cfg.path_cap, "cap on enumerated paths")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "oracle search budget")->check(CLI::PositiveNumber);
  app.add_option("--pad-cap", cfg.pad_cap, "practical pad cap of the decomposition")->check(CLI::PositiveNumber);
  app.add_option("--branch", cfg.branch, "auto, rounding or sampling");
  app.add_option("--induced-branch", cfg.induced_branch, "auto, separator or clean");
  app.add_option("--a,-A", cfg.a, "comma-separated A");
  app.add_option("--b,-B", cfg.b, "comma-separated B");
  app.add_option("--x,-X", cfg.x, "comma-separated X");
  app.add_option("--k", cfg.k, "number of paths")->check(CLI::NonNegativeNumber);
  app.add_option("--t", cfg.t, "excluded K_{t,t}")->check(CLI::PositiveNumber);
  app.add_option("--ell", cfg.ell, "sampling parameter");
  app.add_option("--d", cfg.d, "degeneracy bound for the layering");
  app.add_option("--cert", cfg.cert_path, "artifact to verify");
  app.add_option("--edge-partition", cfg.edge_partition_path, "JSON list of edge lists");
  app.add_flag("--induced", cfg.induced, "induced Menger instead of max-flow");
  app.add_flag("--ktt", cfg.ktt, "extract an induced K_{t,t} model");
  for (const char* kind : {"grid", "path", "star", "cycle", "gnp", "theta", "corridor", "bottleneck", "two-balls"}) {
    std::string name = std::string("--") + kind;
    app.add_option_function<std::vector<std::string>>(
        name,
        [&cfg, kind](const std::vector<std::string>& v) {
          cfg.gen = {kind};
          cfg.gen.insert(cfg.gen.end(), v.begin(), v.end());
        },
        std::string("generate a ") + kind + " graph")
        ->expected(1, 2);
  }
  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kValidation;
  }
  if (const char* th = std::getenv("COARSE_DECOMP_THREADS")) {
    try {
      cfg.threads = std::stoi(th);
    } catch (const std::exception&) {
      cfg.threads = 0;
    }
    if (cfg.threads < 1) {
      err << "COARSE_DECOMP_THREADS must be a positive integer\n";
      return kValidation;
    }
  }
  try {
    auto o = dispatch(cfg);
    std::string text = o.artifact.is_string() ? o.artifact.get<std::string>() : o.artifact.dump(2) + "\n";
    if (cfg.out_path.empty()) {
      out << text;
      err << o.summary << "\n";
    } else {
      std::ofstream f(cfg.out_path);
      if (!f) {
        err << "cannot write '" << cfg.out_path << "'\n";
        return kValidation;
      }
      f << text;
      out << o.summary << "\n";
    }
    return o.code;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace coarse::cli
