#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coarse/decomposition.hpp"
#include "coarse/family.hpp"
#include "coarse/graph.hpp"
#include "coarse/lp.hpp"
#include "coarse/minor.hpp"
#include "coarse/partition.hpp"
#include "coarse/rounding.hpp"
#include "coarse/sampling.hpp"

namespace coarse {

using BigInt = boost::multiprecision::cpp_int;

struct MengerResult {
  int k = 0;
  bool has_paths = false;
  std::vector<Path> paths;  // k disjoint A-B paths when has_paths
  VertexSet separator;      // a minimum A-B separator (size < k) otherwise
};

/// Vertex-capacity max-flow; a vertex of A cap B is a one-vertex path.
MengerResult menger_max_flow(const Graph& g, const VertexSet& a, const VertexSet& b, int k);

/// Size of a minimum A-B vertex separator.
int min_vertex_separator_size(const Graph& g, const VertexSet& a, const VertexSet& b);

/// Paths start in A, end in B and are pairwise vertex-disjoint.
bool verify_disjoint_paths(const Graph& g, const VertexSet& a, const VertexSet& b,
                           const std::vector<Path>& paths, std::string* why = nullptr);

/// Additionally every path is induced and the paths are pairwise anticomplete.
bool verify_anticomplete_packing(const Graph& g, const VertexSet& a, const VertexSet& b,
                                 const std::vector<Path>& paths, std::string* why = nullptr);

struct PackingSearch {
  SearchVerdict verdict = SearchVerdict::inconclusive;
  std::vector<Path> paths;
  std::uint64_t nodes = 0;
};

/// Exhaustive search for k pairwise disjoint and anticomplete induced A-B paths.
PackingSearch brute_force_anticomplete_packing(const Graph& g, const VertexSet& a, const VertexSet& b,
                                               int k, std::uint64_t budget = 5'000'000);

/// s^z (2l+1)^(4l^2+1)
BigInt recursion_bound(int s, int z, int ell);
/// (D+1)^mu (2mu+1)^(4mu^2+1)
BigInt degree_bound(int max_degree, int mu);

struct CleaningStep {
  long long f = 0;
  int s = 0;
  int parts = 0;
  int i_o = -1;  // the contracted part
  long long floor_f_over_s = 0;
  int clean_before = 0, clean_after = 0;
  int s_after = 0;
  int flow_h = 0;  // max-flow in H, capped at floor(f/s) + 1
  Graph h;
  VertexSet h_vertices;   // ids of g
  EdgePartition lambda_h;  // ids of H
  VertexSet a_h, b_h;      // ids of H
  std::vector<Path> quotient_paths;
  std::vector<Path> lifted_paths;  // ids of g
};

/// Contracts the first cluttered part and keeps floor(f/s) + 1 routes through it.
CleaningStep cleaning_step(const Graph& g, const EdgePartition& lambda, const VertexSet& a,
                           const VertexSet& b, long long f);

enum class InducedBranch { automatic, separator, clean };

struct RecursionOptions {
  InducedBranch branch = InducedBranch::automatic;
  std::uint64_t budget = 5'000'000;
};

struct RecursionLevel {
  int z = 0;
  int ell = 0;
  int s = 0;
  std::string g_value;    // g(s, z, ell)
  std::string threshold;  // k g(s, z, ell)
  int min_separator = 0;
  std::string branch;  // "separator", "clean" or "base"
  int base_max_degree = -1;
  int n = 0;
};

enum class MengerVerdict { packing, separator, inconclusive };
std::string to_string(MengerVerdict v);

struct InducedMengerOutcome {
  MengerVerdict verdict = MengerVerdict::inconclusive;
  std::vector<Path> paths;  // ids of the input graph
  VertexSet separator;
  std::vector<RecursionLevel> levels;
  std::vector<CleaningStep> steps;
};

InducedMengerOutcome recursive_induced_menger(const Graph& g, const EdgePartition& lambda, const VertexSet& a,
                                              const VertexSet& b, int k, const RecursionOptions& opts = {});

struct DegreeMengerOutcome {
  InducedMengerOutcome outcome;
  EdgePartition lambda;
  int max_degree = 0;
  int mu = 0;
  int t = 0;
  std::string g_value;  // g(max_degree, mu)
};

DegreeMengerOutcome degree_dependent_menger(const Graph& g, int t, const VertexSet& a, const VertexSet& b, int k,
                                            const std::optional<EdgePartition>& loaded = std::nullopt,
                                            const RecursionOptions& opts = {});

struct AuxMengerOptions {
  BranchOverride branch = BranchOverride::automatic;
  std::uint64_t seed = 1;
  int d = 0;  // the family is 4d-witnessing
  LpOptions lp;
  int audit_max_n = 14;
  std::uint64_t audit_budget = 2'000'000;
};

struct AuxMengerResult {
  bool separator_branch = true;
  double f = 0.0;
  AbLpSolution sol;
  SeparatorCertificate cert;  // separator branch
  PathPacking packing;        // dense branch
  VertexSet h_vertices;       // ids of g
  Graph h;
  VertexSet a_h, b_h;  // ids of H
  int h_max_degree = 0;
  double degree_bound = 0.0;  // 12 log^2(2n) + 4d
  bool degree_ok = false;
  std::optional<CoverAudit> audit;  // no A_H-B_H separator covered by fewer than f/6 sets
};

AuxMengerResult aux_class_menger(const Graph& g, const LayeredFamily& fam, const VertexSet& a,
                                 const VertexSet& b, double f, const AuxMengerOptions& opts = {});

struct MengerPipelineOptions {
  BranchOverride branch = BranchOverride::automatic;
  RecursionOptions recursion;
  std::uint64_t seed = 1;
  LpOptions lp;
  int alpha_max_n = 60;
};

struct MengerPipelineResult {
  std::string kind;  // "packing" or "separator"
  std::vector<Path> paths;
  VertexSet separator;
  VertexSet centers;
  int radius_vertices = 0;      // 8 ceil(log2(2n'))
  int independence_radius = 0;  // 16 ceil(log2(2n)) edges
  std::optional<IndependenceResult> alpha;
  bool separation_verified = false;
  bool cover_verified = false;
  bool packing_verified = false;
  RadiusPartition partition;
  int n_quotient = 0;
  int d = 0;
  int thickness = 0;
  int delta_tilde = 0;
  int mu_tilde = 0;
  std::string g_tilde;
  std::string f;
  AuxMengerResult aux;
  std::optional<DegreeMengerOutcome> inner;
  std::vector<std::string> notes;
};

MengerPipelineResult coarse_menger_pipeline(const Graph& g, int t, const VertexSet& a, const VertexSet& b, int k,
                                            const MengerPipelineOptions& opts = {});

}  // namespace coarse
