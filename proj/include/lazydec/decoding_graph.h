#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "lazydec/code_model.h"
#include "lazydec/noise_circuit.h"

namespace lazydec {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
inline constexpr VertexId kBoundaryVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Direction class of an edge, in canonical scan order.
enum class EdgeClass : std::uint8_t { Space = 0, Time = 1, Diagonal = 2, Boundary = 3 };

struct GraphVertex {
  Coord coord;         // check center
  int t = 0;           // round
  std::uint32_t check = 0;  // basis-local check index
};

/// An edge {u, v} or a half-edge {u, -} (v == kBoundaryVertex).
struct GraphEdge {
  VertexId u = 0;
  VertexId v = kBoundaryVertex;
  double probability = 0.0;
  double weight = 0.0;
  EdgeClass cls = EdgeClass::Space;
  std::vector<QubitId> data_effect;  // data flips of the most likely contributing fault

  bool is_half() const { return v == kBoundaryVertex; }
};

/// How the first round of a window is differenced.
enum class TimeReference {
  kFirstRoundZero,  // s̄(., 0) = 0; round-0 detections are discarded
  kPreparedState,   // s̄(., 0) = s(., 0); the patch starts in the code space
};

struct GraphOptions {
  TimeReference reference = TimeReference::kFirstRoundZero;
  /// Noiseless rounds appended after the noisy ones. They carry detectors but no faults.
  int closing_rounds = 0;
};

/// Defects of a decoding window, sorted by vertex id.
struct Syndrome {
  std::vector<VertexId> defects;
  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

/// Edge ids of a correction (full edges and half-edges share one id space).
struct Correction {
  std::vector<EdgeId> edges;
};

struct EdgeSpec {
  VertexId u = 0;
  VertexId v = kBoundaryVertex;
  double probability = 0.0;
  std::vector<QubitId> data_effect;
};

/// Space-time graph for one check basis. Vertex id = t * checks_per_round + check, which orders
/// vertices by (t, y, x). Full edges take ids [0, num_edges()) in canonical scan order, half-edges
/// follow in vertex order; each vertex carries at most one half-edge.
class DecodingGraph {
 public:
  DecodingGraph() = default;

  /// Builds from explicit parts. Vertices must be listed in (t, y, x) order; parallel edges
  /// are merged.
  static DecodingGraph from_edges(std::vector<GraphVertex> vertices, std::span<const EdgeSpec> edges,
                                  std::uint32_t checks_per_round = 0);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return num_full_; }
  std::size_t num_half_edges() const { return edges_.size() - num_full_; }
  std::size_t num_all_edges() const { return edges_.size(); }
  std::uint32_t checks_per_round() const { return checks_per_round_; }
  int rounds() const { return rounds_; }
  Basis basis() const { return basis_; }

  const GraphVertex& vertex(VertexId v) const { return vertices_[v]; }
  const std::vector<GraphVertex>& vertices() const { return vertices_; }
  const GraphEdge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  bool is_half_edge(EdgeId e) const { return e >= num_full_; }

  struct Neighbor {
    VertexId vertex;
    EdgeId edge;
  };
  /// Full-edge neighbors of v (N_v).
  std::span<const Neighbor> neighbors(VertexId v) const {
    return {adjacency_.data() + adj_offset_[v], adjacency_.data() + adj_offset_[v + 1]};
  }
  EdgeId half_edge_of(VertexId v) const { return half_of_[v]; }
  bool has_half_edges() const { return num_full_ < edges_.size(); }

  /// Edge triggered by a fault mechanism, or -1 when it triggers no detector.
  std::int32_t fault_edge(std::size_t mechanism) const;
  std::size_t num_mechanisms() const { return fault_map_.size(); }

  /// Global id of a circuit fault; valid for circuit-level graphs only.
  std::size_t mechanism_id(const FaultEvent& f) const;
  /// Global id of a data error; valid for code-capacity graphs only.
  std::size_t mechanism_id(QubitId q) const { return q; }

 private:
  friend DecodingGraph build_decoding_graph(const CodeLayout&, const CircuitSchedule&, int,
                                            const NoiseParams&, Basis, const GraphOptions&);
  friend DecodingGraph build_code_capacity_graph(const CodeLayout&, Basis, double);

  void finalize(std::vector<GraphEdge> merged);

  std::vector<GraphVertex> vertices_;
  std::vector<GraphEdge> edges_;
  std::size_t num_full_ = 0;
  std::vector<std::size_t> adj_offset_;
  std::vector<Neighbor> adjacency_;
  std::vector<EdgeId> half_of_;
  std::uint32_t checks_per_round_ = 0;
  int rounds_ = 1;
  Basis basis_ = Basis::X;

  std::vector<std::int32_t> fault_map_;
  // Circuit-level mechanism numbering: round * mechanisms_per_round_ + mech_offset_[loc] + pauli - 1.
  std::size_t mechanisms_per_round_ = 0;
  std::vector<std::uint32_t> mech_offset_;
  std::vector<std::size_t> step_offset_;
};

/// One round's worth of fault mechanisms: every (location, Pauli) pair of the schedule,
/// propagated to the end of its round.
struct FaultMechanism {
  std::uint32_t location = 0;
  std::uint8_t pauli = 0;
  double probability = 0.0;
  std::array<std::vector<std::uint32_t>, 2> flips;  // basis-local checks whose outcome flips this round
  std::vector<QubitId> data_x;                      // data frame left behind
  std::vector<QubitId> data_z;
};

std::vector<FaultMechanism> enumerate_fault_mechanisms(const CodeLayout& layout,
                                                       const CircuitSchedule& schedule, double p);

/// Space-time graph of the `basis` checks over `rounds` noisy rounds (plus options.closing_rounds).
/// Throws if a single fault triggers more than two detectors.
DecodingGraph build_decoding_graph(const CodeLayout& layout, const CircuitSchedule& schedule,
                                   int rounds, const NoiseParams& noise, Basis basis,
                                   const GraphOptions& options = {});

/// Single-round graph for independent data errors: each data qubit is an edge between the
/// checks of `basis` that contain it, or a half-edge if only one does.
DecodingGraph build_code_capacity_graph(const CodeLayout& layout, Basis basis, double p);

/// Defects of per-round raw syndromes raw[t][check]; vertex id = t * raw[t].size() + check.
Syndrome difference_syndrome(const std::vector<std::vector<std::uint8_t>>& raw,
                             TimeReference reference = TimeReference::kFirstRoundZero);

Syndrome faults_to_syndrome(const DecodingGraph& graph, std::span<const FaultEvent> faults);
Syndrome data_errors_to_syndrome(const DecodingGraph& graph, std::span<const QubitId> errors);

/// Defects flipped by an edge set.
Syndrome syndrome_of(const DecodingGraph& graph, std::span<const EdgeId> edges);

struct DefectClasses {
  std::vector<VertexId> bulk;      // no half-edge
  std::vector<VertexId> boundary;  // incident to a half-edge
  std::vector<VertexId> boundary_isolated;  // boundary defects without a defect neighbor
};
DefectClasses classify_defects(const DecodingGraph& graph, const Syndrome& syndrome);

/// Toggles the data effect of every correction edge into `mask` (one byte per data qubit).
void apply_correction(const DecodingGraph& graph, std::span<const EdgeId> edges,
                      std::vector<std::uint8_t>& mask);

/// Syndrome of the `check_basis` checks for a data error mask.
std::vector<std::uint8_t> data_syndrome(const CodeLayout& layout, Basis check_basis,
                                        const std::vector<std::uint8_t>& mask);

/// True when a residual with trivial `check_basis` syndrome acts as a logical operator.
/// Throws std::invalid_argument if the residual still has a syndrome.
bool is_logical_failure(const CodeLayout& layout, Basis check_basis,
                        const std::vector<std::uint8_t>& residual);

}  // namespace lazydec
