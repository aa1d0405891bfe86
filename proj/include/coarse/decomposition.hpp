#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/family.hpp"
#include "coarse/graph.hpp"
#include "coarse/lp.hpp"
#include "coarse/partition.hpp"
#include "coarse/rounding.hpp"
#include "coarse/sampling.hpp"

namespace coarse {

enum class BranchOverride { automatic, rounding, sampling };
std::string to_string(BranchOverride b);
BranchOverride parse_branch(const std::string& s);

struct CenterSeparatorOptions {
  std::optional<double> f_threshold;  // default: LP optimum + 1
  BranchOverride branch = BranchOverride::automatic;
  std::uint64_t seed = 1;
  LpOptions lp;
};

struct CenterSeparator {
  bool rounded = true;        // false: the sampling diagnostic was produced instead
  VertexSet centers;          // S, a subset of the family's centers
  VertexSet expanded;         // union of F_w over w in S
  double lp_objective = 0.0;
  double f_threshold = 0.0;
  double claimed_bound = 0.0;  // 5000 k log^2(2n) f log(4f)
  bool balanced = false;       // expanded is (X, 95/100)-balanced
  SeparatorCertificate cert;
  std::optional<SampledSubgraph> sampled;
  int h_max_degree = 0;
  int h_degeneracy = 0;  // lower bound on the treewidth of H
};

/// `xs` must consist of centers of the family.
CenterSeparator balanced_center_separator(const Graph& g, const LayeredFamily& fam, const VertexSet& xs,
                                          const CenterSeparatorOptions& opts = {});

struct TdNode {
  int id = 0;
  int parent = -1;
  VertexSet witnesses;
  VertexSet bag;
};

struct TdLedger {
  int pad_cap = 0;
  std::string theoretical_pad_cap;  // 110000 k log^2(2n) f log(4f) at the root LP optimum
  int leaf_fallbacks = 0;     // leaves forced because the split could not shrink
  int max_separator = 0;
  int max_witnesses = 0;
  int x0_size = 0;
  std::vector<double> lp_objectives;
};

struct TreeDecomposition {
  int root = 0;
  std::vector<TdNode> nodes;
  TdLedger ledger;
};

struct TreeDecompositionOptions {
  std::optional<int> pad_cap;  // default ceil(|centers| / 4)
  CenterSeparatorOptions separator;
};

TreeDecomposition build_tree_decomposition(const Graph& g, const LayeredFamily& fam, const VertexSet& x0,
                                           const TreeDecompositionOptions& opts = {});

struct TdReport {
  bool ok = true;
  int violation = 0;  // 1 vertex coverage, 2 edge coverage, 3 subtree, 4 witness union, 5 tree shape
  std::string message;
};

/// The three axioms, plus bag = union of witness sets when `fam` is given.
TdReport validate_tree_decomposition(const Graph& g, const TreeDecomposition& td,
                                     const LayeredFamily* fam = nullptr);

struct CoverabilityResult {
  std::optional<VertexSet> centers;
  bool exact = false;  // absence is a proof only when exact
};

/// At most k centers such that every vertex of S has a path on at most r vertices to one.
/// Exhaustive for n <= exact_limit, greedy otherwise.
CoverabilityResult coverability(const Graph& g, const VertexSet& s, int k, int r_vertices,
                                int exact_limit = 20);

struct IndependenceResult {
  int size = 0;
  VertexSet witness;
  bool exact = true;  // false: the budget ran out and `size` is a lower bound
};

/// Largest subset of S whose members are pairwise more than r edges apart.
IndependenceResult distance_r_independence(const Graph& g, const VertexSet& s, int r_edges,
                                           std::uint64_t budget = 5'000'000);

struct BagQuality {
  int node = 0;
  int witness_count = 0;
  VertexSet centers;  // ids of g
  int radius_vertices = 0;
  bool cover_verified = false;
  std::optional<IndependenceResult> alpha;  // at radius 2 * radius_vertices edges
};

struct TreewidthPipelineResult {
  RadiusPartition partition;
  std::vector<VertexSet> blocks;
  int n_quotient = 0;
  int d = 0;
  int thickness = 0;
  TreeDecomposition quotient_td;
  TreeDecomposition td;  // bags in ids of g, witnesses are block representatives
  std::vector<BagQuality> quality;
  int radius_vertices = 0;  // 8 ceil(log2(2n'))
};

struct TreewidthPipelineOptions {
  TreeDecompositionOptions td;
  int alpha_max_n = 40;  // alpha is computed only when n <= this
};

TreewidthPipelineResult coarse_treewidth_pipeline(const Graph& g, int t,
                                                  const TreewidthPipelineOptions& opts = {});

/// The blocks of the four-radius partition: one per component of each part.
std::vector<VertexSet> partition_blocks(const RadiusPartition& rp);
/// A representative per block: its witness center when that lies in the block, else its least vertex.
std::vector<Vertex> block_representatives(const RadiusPartition& rp);

int ceil_log2(double x);

}  // namespace coarse
