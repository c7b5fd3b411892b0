#include "lazydec/decoding_graph.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace lazydec {

namespace {

struct FrameEntry {
  QubitId qubit;
  std::uint8_t pauli;
};

void toggle(std::vector<FrameEntry>& frame, QubitId q, std::uint8_t pauli) {
  if (pauli == 0) return;
  for (auto it = frame.begin(); it != frame.end(); ++it) {
    if (it->qubit == q) {
      it->pauli ^= pauli;
      if (it->pauli == 0) frame.erase(it);
      return;
    }
  }
  frame.push_back({q, pauli});
}

void toggle_sorted(std::vector<std::uint32_t>& set, std::uint32_t value) {
  auto it = std::lower_bound(set.begin(), set.end(), value);
  if (it != set.end() && *it == value) {
    set.erase(it);
  } else {
    set.insert(it, value);
  }
}

// Removes values that occur an even number of times from a sorted list.
void cancel_pairs(std::vector<VertexId>& v) {
  std::sort(v.begin(), v.end());
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) % 2 == 1) v[out++] = v[i];
    i = j;
  }
  v.resize(out);
}

double edge_weight(double p) {
  if (p <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, std::log((1.0 - p) / p));
}

// Accumulates parallel faults onto one edge.
struct EdgeAccumulator {
  VertexId u = 0;
  VertexId v = 0;
  double keep_product = 1.0;  // product of (1 - 2 p_i)
  double best = -1.0;
  std::vector<QubitId> data_effect;

  void add(double p, const std::vector<QubitId>& effect) {
    keep_product *= 1.0 - 2.0 * p;
    if (p > best) {
      best = p;
      data_effect = effect;
    }
  }
};

class EdgeMerger {
 public:
  std::uint32_t add(VertexId a, VertexId b, double p, const std::vector<QubitId>& effect) {
    if (b != kBoundaryVertex && a > b) std::swap(a, b);
    if (a == b) throw std::logic_error("fault produces a self-loop");
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    auto [it, inserted] = index_.try_emplace(key, static_cast<std::uint32_t>(acc_.size()));
    if (inserted) {
      acc_.emplace_back();
      acc_.back().u = a;
      acc_.back().v = b;
    }
    acc_[it->second].add(p, effect);
    return it->second;
  }

  std::vector<GraphEdge> take() {
    std::vector<GraphEdge> out;
    out.reserve(acc_.size());
    for (auto& a : acc_) {
      GraphEdge e;
      e.u = a.u;
      e.v = a.v;
      e.probability = 0.5 * (1.0 - a.keep_product);
      e.data_effect = std::move(a.data_effect);
      out.push_back(std::move(e));
    }
    return out;
  }

 private:
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<EdgeAccumulator> acc_;
};

std::vector<std::int32_t> remap(const std::vector<std::int32_t>& raw, const std::vector<EdgeId>& perm) {
  std::vector<std::int32_t> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = raw[i] < 0 ? -1 : static_cast<std::int32_t>(perm[static_cast<std::size_t>(raw[i])]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

void DecodingGraph::finalize(std::vector<GraphEdge> merged) {
  for (auto& e : merged) {
    e.weight = edge_weight(e.probability);
    if (e.is_half()) {
      e.cls = EdgeClass::Boundary;
    } else if (vertices_[e.u].t == vertices_[e.v].t) {
      e.cls = EdgeClass::Space;
    } else if (vertices_[e.u].coord == vertices_[e.v].coord) {
      e.cls = EdgeClass::Time;
    } else {
      e.cls = EdgeClass::Diagonal;
    }
  }
  std::vector<std::uint32_t> order(merged.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const GraphEdge& ea = merged[a];
    const GraphEdge& eb = merged[b];
    if (ea.is_half() != eb.is_half()) return eb.is_half();
    if (ea.u != eb.u) return ea.u < eb.u;
    if (ea.cls != eb.cls) return ea.cls < eb.cls;
    return ea.v < eb.v;
  });
  std::vector<EdgeId> perm(merged.size());
  edges_.clear();
  edges_.reserve(merged.size());
  num_full_ = 0;
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    perm[order[i]] = i;
    edges_.push_back(std::move(merged[order[i]]));
    if (!edges_.back().is_half()) ++num_full_;
  }
  fault_map_ = remap(fault_map_, perm);

  const std::size_t n = vertices_.size();
  half_of_.assign(n, kNoEdge);
  adj_offset_.assign(n + 1, 0);
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const GraphEdge& ge = edges_[e];
    if (ge.u >= n || (!ge.is_half() && ge.v >= n)) throw std::out_of_range("edge endpoint out of range");
    if (ge.is_half()) {
      half_of_[ge.u] = e;
    } else {
      ++adj_offset_[ge.u + 1];
      ++adj_offset_[ge.v + 1];
    }
  }
  for (std::size_t i = 0; i < n; ++i) adj_offset_[i + 1] += adj_offset_[i];
  adjacency_.assign(adj_offset_[n], {});
  std::vector<std::size_t> fill(adj_offset_.begin(), adj_offset_.end() - 1);
  for (EdgeId e = 0; e < num_full_; ++e) {
    const GraphEdge& ge = edges_[e];
    adjacency_[fill[ge.u]++] = {ge.v, e};
    adjacency_[fill[ge.v]++] = {ge.u, e};
  }
}

DecodingGraph DecodingGraph::from_edges(std::vector<GraphVertex> vertices,
                                        std::span<const EdgeSpec> edges,
                                        std::uint32_t checks_per_round) {
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const auto& a = vertices[i - 1];
    const auto& b = vertices[i];
    if (std::tie(a.t, a.coord.y, a.coord.x) >= std::tie(b.t, b.coord.y, b.coord.x)) {
      throw std::invalid_argument("vertices must be strictly sorted by (t, y, x)");
    }
  }
  DecodingGraph g;
  g.vertices_ = std::move(vertices);
  int max_t = 0;
  for (const auto& v : g.vertices_) max_t = std::max(max_t, v.t);
  g.rounds_ = max_t + 1;
  g.checks_per_round_ = checks_per_round ? checks_per_round : static_cast<std::uint32_t>(g.vertices_.size());
  EdgeMerger merger;
  g.fault_map_.reserve(edges.size());
  for (const EdgeSpec& s : edges) {
    g.fault_map_.push_back(static_cast<std::int32_t>(merger.add(s.u, s.v, s.probability, s.data_effect)));
  }
  g.finalize(merger.take());
  return g;
}

std::int32_t DecodingGraph::fault_edge(std::size_t mechanism) const {
  if (mechanism >= fault_map_.size()) throw std::out_of_range("unknown fault mechanism");
  return fault_map_[mechanism];
}

std::size_t DecodingGraph::mechanism_id(const FaultEvent& f) const {
  if (mechanisms_per_round_ == 0) throw std::logic_error("graph has no circuit fault map");
  if (f.timestep >= step_offset_.size()) throw std::out_of_range("fault timestep out of range");
  const std::size_t loc = step_offset_[f.timestep] + f.event;
  const std::size_t end =
      f.timestep + 1u < step_offset_.size() ? step_offset_[f.timestep + 1u] : mech_offset_.size() - 1;
  if (loc >= end) throw std::out_of_range("fault event out of range");
  const std::uint32_t choices = mech_offset_[loc + 1] - mech_offset_[loc];
  if (f.pauli == 0 || f.pauli > choices) throw std::out_of_range("fault Pauli out of range");
  return static_cast<std::size_t>(f.round) * mechanisms_per_round_ + mech_offset_[loc] + f.pauli - 1;
}

// ---------------------------------------------------------------------------------------------

std::vector<FaultMechanism> enumerate_fault_mechanisms(const CodeLayout& layout,
                                                       const CircuitSchedule& schedule, double p) {
  const LocationTable table(schedule);
  const std::size_t nq = schedule.num_qubits;

  // CNOT partners per step; partner_role 1 = control, 2 = target.
  const std::size_t nsteps = schedule.steps.size();
  std::vector<std::vector<QubitId>> partner(nsteps, std::vector<QubitId>(nq, kNoQubit));
  std::vector<std::vector<std::uint8_t>> role(nsteps, std::vector<std::uint8_t>(nq, 0));
  for (std::size_t s = 0; s < nsteps; ++s) {
    for (const GateEvent& ev : schedule.steps[s].events) {
      if (ev.kind != GateKind::Cnot) continue;
      partner[s][ev.q0] = ev.q1;
      role[s][ev.q0] = 1;
      partner[s][ev.q1] = ev.q0;
      role[s][ev.q1] = 2;
    }
  }

  std::vector<FaultMechanism> out;
  std::vector<FrameEntry> frame, snapshot;
  for (std::uint32_t loc = 0; loc < table.size(); ++loc) {
    const FaultLocation& fl = table.locations()[loc];
    const GateEvent& ev = schedule.steps[fl.timestep].events[fl.event];
    const int choices = fault_choices(fl.cls);
    const double prob = fl.cls == LocationClass::Measurement ? 2.0 * p / 3.0 : p / choices;
    for (int c = 1; c <= choices; ++c) {
      FaultMechanism m;
      m.location = loc;
      m.pauli = static_cast<std::uint8_t>(c);
      m.probability = prob;
      if (fl.cls == LocationClass::Measurement) {
        const Plaquette& pl = layout.plaquettes[ev.q0 - layout.num_data()];
        m.flips[basis_index(pl.basis)].push_back(pl.basis_index);
        out.push_back(std::move(m));
        continue;
      }
      frame.clear();
      if (fl.cls == LocationClass::TwoQubit) {
        toggle(frame, ev.q0, static_cast<std::uint8_t>(c & 3));
        toggle(frame, ev.q1, static_cast<std::uint8_t>((c >> 2) & 3));
      } else {
        toggle(frame, ev.q0, static_cast<std::uint8_t>(c));
      }
      for (std::size_t s = fl.timestep + 1u; s < nsteps; ++s) {
        if (static_cast<int>(s) == CircuitSchedule::kMeasureStep) {
          for (const FrameEntry& fe : frame) {
            if (!layout.is_ancilla(fe.qubit)) continue;
            const Plaquette& pl = layout.plaquettes[fe.qubit - layout.num_data()];
            const std::uint8_t bit = pl.basis == Basis::X ? (fe.pauli & kZ) : (fe.pauli & kX);
            if (bit) m.flips[basis_index(pl.basis)].push_back(pl.basis_index);
          }
          continue;
        }
        snapshot = frame;
        for (const FrameEntry& fe : snapshot) {
          const QubitId other = partner[s][fe.qubit];
          if (other == kNoQubit) continue;
          if (role[s][fe.qubit] == 1 && (fe.pauli & kX)) toggle(frame, other, kX);
          if (role[s][fe.qubit] == 2 && (fe.pauli & kZ)) toggle(frame, other, kZ);
        }
      }
      for (const FrameEntry& fe : frame) {
        if (layout.is_ancilla(fe.qubit)) continue;
        if (fe.pauli & kX) m.data_x.push_back(fe.qubit);
        if (fe.pauli & kZ) m.data_z.push_back(fe.qubit);
      }
      for (auto& f : m.flips) std::sort(f.begin(), f.end());
      std::sort(m.data_x.begin(), m.data_x.end());
      std::sort(m.data_z.begin(), m.data_z.end());
      out.push_back(std::move(m));
    }
  }
  return out;
}

DecodingGraph build_decoding_graph(const CodeLayout& layout, const CircuitSchedule& schedule,
                                   int rounds, const NoiseParams& noise, Basis basis,
                                   const GraphOptions& options) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (options.closing_rounds < 0) throw std::invalid_argument("closing_rounds must be >= 0");
  if (noise.mode != NoiseMode::CircuitLevel) {
    throw std::invalid_argument("circuit decoding graph needs circuit-level noise");
  }
  const auto nc = static_cast<std::uint32_t>(layout.num_checks(basis));
  const int total = rounds + options.closing_rounds;
  const int first_t = options.reference == TimeReference::kFirstRoundZero ? 1 : 0;

  DecodingGraph g;
  g.basis_ = basis;
  g.rounds_ = total;
  g.checks_per_round_ = nc;
  g.vertices_.reserve(static_cast<std::size_t>(total) * nc);
  for (int t = 0; t < total; ++t) {
    for (std::uint32_t i = 0; i < nc; ++i) g.vertices_.push_back({layout.check(basis, i).center, t, i});
  }

  const auto mechs = enumerate_fault_mechanisms(layout, schedule, noise.p);
  const LocationTable table(schedule);
  g.mech_offset_.assign(table.size() + 1, 0);
  for (std::uint32_t loc = 0; loc < table.size(); ++loc) {
    g.mech_offset_[loc + 1] = g.mech_offset_[loc] + static_cast<std::uint32_t>(fault_choices(table.locations()[loc].cls));
  }
  g.step_offset_.clear();
  for (std::uint16_t s = 0; s < schedule.steps.size(); ++s) g.step_offset_.push_back(table.index_of(s, 0));
  g.mechanisms_per_round_ = mechs.size();

  // Detection pattern of each mechanism relative to its own round: checks flipped now (a) and
  // checks flipped in the next round's difference (b = a xor syndrome of the data left behind).
  const auto membership = checks_containing(layout, basis);
  const int bi = basis_index(basis);
  struct Pattern {
    std::vector<std::uint32_t> now, next;
  };
  std::vector<Pattern> patterns(mechs.size());
  for (std::size_t k = 0; k < mechs.size(); ++k) {
    const FaultMechanism& m = mechs[k];
    const auto& data = basis == Basis::X ? m.data_z : m.data_x;
    Pattern& pat = patterns[k];
    pat.now = m.flips[bi];
    pat.next = m.flips[bi];
    for (QubitId q : data) {
      for (std::uint32_t c : membership[q]) toggle_sorted(pat.next, c);
    }
    if (pat.now.size() + pat.next.size() > 2) {
      throw std::logic_error("a single fault triggers more than two detectors");
    }
  }

  EdgeMerger merger;
  g.fault_map_.assign(mechs.size() * static_cast<std::size_t>(rounds), -1);
  std::vector<VertexId> det;
  for (int r = 0; r < rounds; ++r) {
    for (std::size_t k = 0; k < mechs.size(); ++k) {
      det.clear();
      if (r >= first_t) {
        for (std::uint32_t c : patterns[k].now) det.push_back(static_cast<VertexId>(r) * nc + c);
      }
      if (r + 1 < total) {
        for (std::uint32_t c : patterns[k].next) det.push_back(static_cast<VertexId>(r + 1) * nc + c);
      }
      if (det.empty()) continue;
      const auto& data = basis == Basis::X ? mechs[k].data_z : mechs[k].data_x;
      const VertexId v = det.size() == 2 ? det[1] : kBoundaryVertex;
      g.fault_map_[static_cast<std::size_t>(r) * mechs.size() + k] =
          static_cast<std::int32_t>(merger.add(det[0], v, mechs[k].probability, data));
    }
  }
  g.finalize(merger.take());
  return g;
}

DecodingGraph build_code_capacity_graph(const CodeLayout& layout, Basis basis, double p) {
  const auto nc = static_cast<std::uint32_t>(layout.num_checks(basis));
  DecodingGraph g;
  g.basis_ = basis;
  g.rounds_ = 1;
  g.checks_per_round_ = nc;
  for (std::uint32_t i = 0; i < nc; ++i) g.vertices_.push_back({layout.check(basis, i).center, 0, i});
  const auto membership = checks_containing(layout, basis);
  EdgeMerger merger;
  g.fault_map_.assign(layout.num_data(), -1);
  for (QubitId q = 0; q < layout.num_data(); ++q) {
    const auto& cs = membership[q];
    if (cs.empty()) continue;
    if (cs.size() > 2) throw std::logic_error("data qubit in more than two checks of one basis");
    const VertexId v = cs.size() == 2 ? cs[1] : kBoundaryVertex;
    g.fault_map_[q] = static_cast<std::int32_t>(merger.add(cs[0], v, p, {q}));
  }
  g.finalize(merger.take());
  return g;
}

// ---------------------------------------------------------------------------------------------

Syndrome difference_syndrome(const std::vector<std::vector<std::uint8_t>>& raw, TimeReference reference) {
  Syndrome s;
  if (raw.empty()) return s;
  const std::size_t nc = raw[0].size();
  for (std::size_t t = 0; t < raw.size(); ++t) {
    if (raw[t].size() != nc) throw std::invalid_argument("ragged syndrome rounds");
    for (std::size_t i = 0; i < nc; ++i) {
      std::uint8_t bit;
      if (t > 0) {
        bit = (raw[t][i] ^ raw[t - 1][i]) & 1u;
      } else {
        bit = reference == TimeReference::kPreparedState ? (raw[0][i] & 1u) : 0;
      }
      if (bit) s.defects.push_back(static_cast<VertexId>(t * nc + i));
    }
  }
  return s;
}

Syndrome syndrome_of(const DecodingGraph& graph, std::span<const EdgeId> edges) {
  Syndrome s;
  s.defects.reserve(2 * edges.size());
  for (EdgeId e : edges) {
    const GraphEdge& ge = graph.edge(e);
    s.defects.push_back(ge.u);
    if (!ge.is_half()) s.defects.push_back(ge.v);
  }
  cancel_pairs(s.defects);
  return s;
}

Syndrome faults_to_syndrome(const DecodingGraph& graph, std::span<const FaultEvent> faults) {
  std::vector<EdgeId> edges;
  edges.reserve(faults.size());
  for (const FaultEvent& f : faults) {
    const std::int32_t e = graph.fault_edge(graph.mechanism_id(f));
    if (e >= 0) edges.push_back(static_cast<EdgeId>(e));
  }
  return syndrome_of(graph, edges);
}

Syndrome data_errors_to_syndrome(const DecodingGraph& graph, std::span<const QubitId> errors) {
  std::vector<EdgeId> edges;
  edges.reserve(errors.size());
  for (QubitId q : errors) {
    const std::int32_t e = graph.fault_edge(graph.mechanism_id(q));
    if (e >= 0) edges.push_back(static_cast<EdgeId>(e));
  }
  return syndrome_of(graph, edges);
}

DefectClasses classify_defects(const DecodingGraph& graph, const Syndrome& syndrome) {
  DefectClasses out;
  const auto& d = syndrome.defects;
  auto in_syndrome = [&](VertexId v) { return std::binary_search(d.begin(), d.end(), v); };
  for (VertexId v : d) {
    if (graph.half_edge_of(v) == kNoEdge) {
      out.bulk.push_back(v);
      continue;
    }
    out.boundary.push_back(v);
    const auto nb = graph.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](const auto& n) { return in_syndrome(n.vertex); })) {
      out.boundary_isolated.push_back(v);
    }
  }
  return out;
}

void apply_correction(const DecodingGraph& graph, std::span<const EdgeId> edges,
                      std::vector<std::uint8_t>& mask) {
  for (EdgeId e : edges) {
    for (QubitId q : graph.edge(e).data_effect) mask[q] ^= 1u;
  }
}

std::vector<std::uint8_t> data_syndrome(const CodeLayout& layout, Basis check_basis,
                                        const std::vector<std::uint8_t>& mask) {
  const std::size_t nc = layout.num_checks(check_basis);
  std::vector<std::uint8_t> s(nc, 0);
  for (std::size_t i = 0; i < nc; ++i) {
    for (QubitId q : layout.check(check_basis, i).support) s[i] ^= mask[q] & 1u;
  }
  return s;
}

bool is_logical_failure(const CodeLayout& layout, Basis check_basis,
                        const std::vector<std::uint8_t>& residual) {
  if (residual.size() != layout.num_data()) throw std::invalid_argument("residual size mismatch");
  const auto s = data_syndrome(layout, check_basis, residual);
  if (std::any_of(s.begin(), s.end(), [](std::uint8_t b) { return b != 0; })) {
    throw std::invalid_argument("residual has a non-trivial syndrome");
  }
  for (const auto& cut : layout.logical_cuts(check_basis)) {
    std::uint8_t parity = 0;
    for (QubitId q : cut) parity ^= residual[q] & 1u;
    if (parity) return true;
  }
  return false;
}

}  // namespace lazydec
