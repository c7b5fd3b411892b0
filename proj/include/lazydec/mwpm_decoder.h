#pragma once

#include <cstdint>
#include <vector>

#include "lazydec/decoding_graph.h"

namespace lazydec {

struct MwpmResult {
  Correction correction;
  double matching_weight = 0.0;  // sum of path weights of the chosen pairing
};

/// Minimum-weight perfect matching decoder. Pair distances come from Dijkstra runs out of each
/// defect; boundary matches go through one pseudo-node per defect, with pseudo-nodes joined to
/// each other at zero cost.
class MwpmDecoder {
 public:
  explicit MwpmDecoder(const DecodingGraph& graph);

  /// Throws std::invalid_argument if no perfect matching exists (odd defect count and no
  /// reachable boundary).
  MwpmResult decode(const Syndrome& syndrome);
  const DecodingGraph& graph() const { return *graph_; }

  /// Integer scale used to hand weights to the matcher.
  static constexpr double kWeightScale = 1e7;

 private:
  // Distances from `source` to the other defects and to the boundary. Stops once every
  // target is settled.
  void run_dijkstra(VertexId source, const std::vector<VertexId>& defects, std::vector<double>& to_defect,
                    double& to_boundary);
  // Appends the edges of a shortest path from `source` to `target` (kBoundaryVertex: the
  // closest half-edge).
  void trace_path(VertexId source, VertexId target, std::vector<EdgeId>& out);

  const DecodingGraph* graph_;
  std::vector<double> dist_;
  std::vector<EdgeId> via_;
  std::vector<std::uint8_t> settled_;
  std::vector<VertexId> seen_;
  std::vector<std::int32_t> defect_slot_;
};

MwpmResult mwpm_decode(const DecodingGraph& graph, const Syndrome& syndrome);

}  // namespace lazydec
