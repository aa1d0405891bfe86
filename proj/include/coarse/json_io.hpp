#pragma once

#include <string>

#include "json.hpp"

#include "coarse/decomposition.hpp"
#include "coarse/family.hpp"
#include "coarse/lp.hpp"
#include "coarse/menger.hpp"
#include "coarse/partition.hpp"
#include "coarse/rounding.hpp"
#include "coarse/sampling.hpp"

namespace coarse {

using json = nlohmann::json;

// Every artifact carries a "kind" field naming its schema.
json to_json(const RadiusPartition& rp);
json to_json(const LayeredFamily& fam);
json to_json(const AbLpSolution& sol);
json to_json(const BalancedLpSolution& sol);
json to_json(const SeparatorCertificate& cert);
json to_json(const PathPacking& pk);
json to_json(const SampledSubgraph& sub);
json to_json(const TreeDecomposition& td, const std::vector<BagQuality>* quality = nullptr);
json to_json(const MengerResult& res, const VertexSet& a, const VertexSet& b);
json to_json(const InducedMengerOutcome& res, const VertexSet& a, const VertexSet& b, int k);
json to_json(const CleaningStep& st);
json to_json(const MengerPipelineResult& res, const VertexSet& a, const VertexSet& b, int k);
json to_json(const CenterSeparator& sep);
json to_json(const KttExtraction& ex, int t);

TreeDecomposition tree_decomposition_from_json(const json& j);

struct VerifyReport {
  bool ok = true;
  std::string kind;
  std::string message;
};

/// Re-checks an artifact against g without reusing the producer's intermediate state.
VerifyReport verify_artifact(const Graph& g, const json& j);

}  // namespace coarse
