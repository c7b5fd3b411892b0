#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lazydec/decoding_graph.h"

namespace lazydec {

enum class LazyStatus { Success, TooManyAmbiguous, ResidualSyndrome };

const char* to_string(LazyStatus s);

/// Which defect set the half-edge ambiguity test looks at.
enum class AmbiguityReference {
  kOriginalSyndrome,  // N_u ∩ s̄, as in the pseudocode
  kWorkingSyndrome,   // N_u ∩ s̄' (defects still unmatched)
};

/// kEdgeScan walks every edge and half-edge of the graph. kDefectDriven only visits edges that
/// touch a defect and gives identical outcomes.
enum class ScanStrategy { kEdgeScan, kDefectDriven };

struct LazyOptions {
  AmbiguityReference ambiguity = AmbiguityReference::kOriginalSyndrome;
  ScanStrategy scan = ScanStrategy::kDefectDriven;
};

struct LazyOutcome {
  LazyStatus status = LazyStatus::Success;
  Correction correction;  // empty unless status == Success
  int ambiguous_count = 0;

  bool success() const { return status == LazyStatus::Success; }
};

/// Greedy local matcher: pair adjacent defects along edges in canonical order, then send the
/// leftovers to the boundary through their half-edges. Fails when more than one boundary match
/// is ambiguous or a defect is left unmatched.
class LazyDecoder {
 public:
  explicit LazyDecoder(const DecodingGraph& graph, LazyOptions options = {});

  LazyOutcome decode(const Syndrome& syndrome);
  const DecodingGraph& graph() const { return *graph_; }

 private:
  LazyOutcome decode_edge_scan(const Syndrome& syndrome);
  LazyOutcome decode_defect_driven(const Syndrome& syndrome);
  bool has_defect_neighbor(VertexId u) const;
  void reset(const Syndrome& syndrome);

  const DecodingGraph* graph_;
  LazyOptions options_;
  std::vector<std::uint8_t> original_;
  std::vector<std::uint8_t> working_;
  std::vector<EdgeId> candidates_;
};

LazyOutcome lazy_decode(const DecodingGraph& graph, const Syndrome& syndrome, LazyOptions options = {});

/// Round-by-round lazy decoding. Round t is settled once round t + 2 has arrived, so only three
/// rounds of syndrome are live at any time. Success and the correction match the batch decoder
/// with the original-syndrome ambiguity test; the reported failure reason may differ because
/// failures are detected round by round. After a failure, incoming raw rounds are forwarded
/// untouched.
class LazyStreamDecoder {
 public:
  explicit LazyStreamDecoder(const DecodingGraph& graph,
                             TimeReference reference = TimeReference::kFirstRoundZero);

  /// Raw syndrome bits of the next round, one per check of the graph's basis.
  void push_round(std::span<const std::uint8_t> raw);
  /// Settles the remaining rounds and returns the window outcome.
  LazyOutcome finish();

  int rounds_received() const { return rounds_received_; }
  bool failed() const { return status_ != LazyStatus::Success; }
  /// Round being settled when the failure was detected, or -1.
  int failure_round() const { return failure_round_; }
  /// Edges committed so far, in emission order.
  const std::vector<EdgeId>& emitted() const { return emitted_; }
  /// Number of edges committed by each push_round call.
  const std::vector<std::size_t>& emitted_per_push() const { return emitted_per_push_; }
  /// Raw rounds handed to the full decoder: the buffered rounds at the failure, then every later one.
  const std::vector<std::vector<std::uint8_t>>& forwarded() const { return forwarded_; }

 private:
  void settle(int t);
  void fail(LazyStatus status, int t);

  const DecodingGraph* graph_;
  TimeReference reference_;
  std::uint32_t nc_;
  std::vector<std::uint8_t> original_;
  std::vector<std::uint8_t> working_;
  std::vector<std::vector<std::uint8_t>> buffer_;  // last three raw rounds
  std::vector<std::size_t> round_edge_begin_;
  std::vector<EdgeId> emitted_;
  std::vector<std::size_t> emitted_per_push_;
  std::vector<std::vector<std::uint8_t>> forwarded_;
  int rounds_received_ = 0;
  int settled_ = 0;
  int ambiguous_ = 0;
  int failure_round_ = -1;
  LazyStatus status_ = LazyStatus::Success;
};

/// Syndrome bits per round for one basis: (d^2 - 1) / 2.
std::int64_t bits_per_round(int d);

/// Bits sent to the decoding unit for one d-round window of one basis.
std::int64_t count_message_bits(const LazyOutcome& outcome, int d);

}  // namespace lazydec
