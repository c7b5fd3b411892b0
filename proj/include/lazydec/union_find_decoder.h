#pragma once

#include <cstdint>
#include <vector>

#include "lazydec/decoding_graph.h"

namespace lazydec {

/// Union-Find decoder: odd clusters grow by half-edges until they become even or touch the
/// boundary, then each cluster is peeled along a spanning forest. Each half-edge of the graph
/// leads to its own virtual boundary node. Scratch state is reset sparsely, so the cost of a
/// decode tracks the size of the clusters rather than the graph.
class UnionFindDecoder {
 public:
  explicit UnionFindDecoder(const DecodingGraph& graph);

  /// Throws std::invalid_argument when a cluster can neither grow nor become valid (odd defect
  /// count on a graph region without boundary).
  Correction decode(const Syndrome& syndrome);
  const DecodingGraph& graph() const { return *graph_; }

 private:
  using Node = std::uint32_t;

  Node find(Node x);
  Node unite(Node a, Node b);
  void touch(Node x);
  bool invalid(Node root) const { return (parity_[root] & 1u) && !boundary_[root]; }
  bool fully_grown(VertexId v) const;
  Node other_end(EdgeId e, Node from) const;
  void peel(const Syndrome& syndrome, Correction& out);
  void reset();

  const DecodingGraph* graph_;
  std::uint32_t num_vertices_;
  std::vector<Node> parent_;
  std::vector<std::uint32_t> size_;
  std::vector<std::uint32_t> parity_;
  std::vector<std::uint8_t> boundary_;
  std::vector<std::uint8_t> touched_;
  std::vector<std::vector<VertexId>> frontier_;  // per root: vertices that may still grow
  std::vector<std::uint8_t> support_;            // per edge: 0, 1 or 2 half-steps grown
  std::vector<std::uint8_t> mark_;
  std::vector<Node> touched_nodes_;
  std::vector<EdgeId> touched_edges_;
  std::vector<EdgeId> grown_;
  std::vector<EdgeId> fusion_;
};

Correction uf_decode(const DecodingGraph& graph, const Syndrome& syndrome);

}  // namespace lazydec
