#include "lazydec/lazy_decoder.h"

#include <algorithm>
#include <stdexcept>

namespace lazydec {

const char* to_string(LazyStatus s) {
  switch (s) {
    case LazyStatus::Success: return "success";
    case LazyStatus::TooManyAmbiguous: return "too_many_ambiguous";
    case LazyStatus::ResidualSyndrome: return "residual_syndrome";
  }
  return "?";
}

LazyDecoder::LazyDecoder(const DecodingGraph& graph, LazyOptions options)
    : graph_(&graph),
      options_(options),
      original_(graph.num_vertices(), 0),
      working_(graph.num_vertices(), 0) {}

void LazyDecoder::reset(const Syndrome& syndrome) {
  for (VertexId v : syndrome.defects) {
    if (v >= original_.size()) throw std::out_of_range("defect outside the decoding graph");
    original_[v] = 1;
    working_[v] = 1;
  }
}

bool LazyDecoder::has_defect_neighbor(VertexId u) const {
  const auto& ref = options_.ambiguity == AmbiguityReference::kOriginalSyndrome ? original_ : working_;
  for (const auto& n : graph_->neighbors(u)) {
    if (ref[n.vertex]) return true;
  }
  return false;
}

LazyOutcome LazyDecoder::decode(const Syndrome& syndrome) {
  reset(syndrome);
  LazyOutcome out = options_.scan == ScanStrategy::kEdgeScan ? decode_edge_scan(syndrome)
                                                             : decode_defect_driven(syndrome);
  for (VertexId v : syndrome.defects) {
    original_[v] = 0;
    working_[v] = 0;
  }
  if (!out.success()) out.correction.edges.clear();
  return out;
}

LazyOutcome LazyDecoder::decode_edge_scan(const Syndrome& syndrome) {
  LazyOutcome out;
  const DecodingGraph& g = *graph_;
  std::size_t remaining = syndrome.defects.size();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const GraphEdge& ge = g.edge(e);
    if (working_[ge.u] && working_[ge.v]) {
      out.correction.edges.push_back(e);
      working_[ge.u] = working_[ge.v] = 0;
      remaining -= 2;
    }
  }
  for (EdgeId e = static_cast<EdgeId>(g.num_edges()); e < g.num_all_edges(); ++e) {
    const VertexId u = g.edge(e).u;
    if (!working_[u]) continue;
    out.correction.edges.push_back(e);
    working_[u] = 0;
    --remaining;
    if (has_defect_neighbor(u)) {
      if (++out.ambiguous_count > 1) {
        out.status = LazyStatus::TooManyAmbiguous;
        return out;
      }
    }
  }
  if (remaining != 0) out.status = LazyStatus::ResidualSyndrome;
  return out;
}

LazyOutcome LazyDecoder::decode_defect_driven(const Syndrome& syndrome) {
  LazyOutcome out;
  const DecodingGraph& g = *graph_;
  // Only edges with both endpoints in the syndrome can fire in the first pass.
  candidates_.clear();
  for (VertexId u : syndrome.defects) {
    for (const auto& n : g.neighbors(u)) {
      if (n.vertex > u && original_[n.vertex]) candidates_.push_back(n.edge);
    }
  }
  std::sort(candidates_.begin(), candidates_.end());
  std::size_t remaining = syndrome.defects.size();
  for (EdgeId e : candidates_) {
    const GraphEdge& ge = g.edge(e);
    if (working_[ge.u] && working_[ge.v]) {
      out.correction.edges.push_back(e);
      working_[ge.u] = working_[ge.v] = 0;
      remaining -= 2;
    }
  }
  // Half-edge ids follow vertex order, and the defects are sorted.
  for (VertexId u : syndrome.defects) {
    if (!working_[u]) continue;
    const EdgeId h = g.half_edge_of(u);
    if (h == kNoEdge) continue;
    out.correction.edges.push_back(h);
    working_[u] = 0;
    --remaining;
    if (has_defect_neighbor(u)) {
      if (++out.ambiguous_count > 1) {
        out.status = LazyStatus::TooManyAmbiguous;
        return out;
      }
    }
  }
  if (remaining != 0) out.status = LazyStatus::ResidualSyndrome;
  return out;
}

LazyOutcome lazy_decode(const DecodingGraph& graph, const Syndrome& syndrome, LazyOptions options) {
  LazyDecoder dec(graph, options);
  return dec.decode(syndrome);
}

// ---------------------------------------------------------------------------------------------

LazyStreamDecoder::LazyStreamDecoder(const DecodingGraph& graph, TimeReference reference)
    : graph_(&graph),
      reference_(reference),
      nc_(graph.checks_per_round()),
      original_(graph.num_vertices(), 0),
      working_(graph.num_vertices(), 0) {
  if (nc_ == 0) throw std::invalid_argument("graph has no checks");
  const int rounds = graph.rounds();
  round_edge_begin_.assign(static_cast<std::size_t>(rounds) + 1, graph.num_edges());
  // Full edges are sorted by their smaller endpoint, so each round owns a contiguous range.
  for (int t = rounds - 1; t >= 0; --t) {
    const VertexId first = static_cast<VertexId>(t) * nc_;
    const auto& edges = graph.edges();
    auto it = std::lower_bound(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(graph.num_edges()),
                               first, [](const GraphEdge& e, VertexId v) { return e.u < v; });
    round_edge_begin_[static_cast<std::size_t>(t)] = static_cast<std::size_t>(it - edges.begin());
  }
}

void LazyStreamDecoder::push_round(std::span<const std::uint8_t> raw) {
  if (raw.size() != nc_) throw std::invalid_argument("round size does not match the graph");
  if (rounds_received_ >= graph_->rounds()) throw std::out_of_range("more rounds than the graph holds");
  const std::size_t before = emitted_.size();
  if (failed()) {
    forwarded_.emplace_back(raw.begin(), raw.end());
    ++rounds_received_;
    emitted_per_push_.push_back(0);
    return;
  }
  const int t = rounds_received_;
  const VertexId base = static_cast<VertexId>(t) * nc_;
  for (std::uint32_t i = 0; i < nc_; ++i) {
    std::uint8_t bit;
    if (t == 0) {
      bit = reference_ == TimeReference::kPreparedState ? (raw[i] & 1u) : 0;
    } else {
      bit = (raw[i] ^ buffer_.back()[i]) & 1u;
    }
    original_[base + i] = working_[base + i] = bit;
  }
  buffer_.emplace_back(raw.begin(), raw.end());
  if (buffer_.size() > 3) buffer_.erase(buffer_.begin());
  ++rounds_received_;
  while (!failed() && settled_ + 2 < rounds_received_) settle(settled_++);
  emitted_per_push_.push_back(emitted_.size() - before);
}

void LazyStreamDecoder::fail(LazyStatus status, int t) {
  status_ = status;
  failure_round_ = t;
  for (const auto& row : buffer_) forwarded_.push_back(row);
}

void LazyStreamDecoder::settle(int t) {
  const DecodingGraph& g = *graph_;
  for (std::size_t e = round_edge_begin_[static_cast<std::size_t>(t)];
       e < round_edge_begin_[static_cast<std::size_t>(t) + 1]; ++e) {
    const GraphEdge& ge = g.edge(static_cast<EdgeId>(e));
    if (working_[ge.u] && working_[ge.v]) {
      emitted_.push_back(static_cast<EdgeId>(e));
      working_[ge.u] = working_[ge.v] = 0;
    }
  }
  const VertexId base = static_cast<VertexId>(t) * nc_;
  for (VertexId u = base; u < base + nc_; ++u) {
    if (!working_[u]) continue;
    const EdgeId h = g.half_edge_of(u);
    if (h == kNoEdge) continue;
    emitted_.push_back(h);
    working_[u] = 0;
    for (const auto& n : g.neighbors(u)) {
      if (original_[n.vertex]) {
        if (++ambiguous_ > 1) {
          fail(LazyStatus::TooManyAmbiguous, t);
          return;
        }
        break;
      }
    }
  }
  for (VertexId u = base; u < base + nc_; ++u) {
    if (working_[u]) {
      fail(LazyStatus::ResidualSyndrome, t);
      return;
    }
  }
}

LazyOutcome LazyStreamDecoder::finish() {
  while (!failed() && settled_ < rounds_received_) settle(settled_++);
  LazyOutcome out;
  out.status = status_;
  out.ambiguous_count = ambiguous_;
  if (!failed()) out.correction.edges = emitted_;
  return out;
}

// ---------------------------------------------------------------------------------------------

std::int64_t bits_per_round(int d) {
  return (static_cast<std::int64_t>(d) * d - 1) / 2;
}

std::int64_t count_message_bits(const LazyOutcome& outcome, int d) {
  if (outcome.success()) return 0;
  return bits_per_round(d) * d;
}

}  // namespace lazydec
