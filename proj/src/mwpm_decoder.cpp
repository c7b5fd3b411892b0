#include "lazydec/mwpm_decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "lazydec/blossom.h"

namespace lazydec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using QueueItem = std::pair<double, VertexId>;
using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

}  // namespace

MwpmDecoder::MwpmDecoder(const DecodingGraph& graph)
    : graph_(&graph),
      dist_(graph.num_vertices(), kInf),
      via_(graph.num_vertices(), kNoEdge),
      settled_(graph.num_vertices(), 0),
      defect_slot_(graph.num_vertices(), -1) {}

void MwpmDecoder::run_dijkstra(VertexId source, const std::vector<VertexId>& defects,
                               std::vector<double>& to_defect, double& to_boundary) {
  for (VertexId v : seen_) {
    dist_[v] = kInf;
    via_[v] = kNoEdge;
    settled_[v] = 0;
  }
  seen_.clear();
  to_defect.assign(defects.size(), kInf);
  to_boundary = kInf;
  const bool want_boundary = graph_->has_half_edges();
  std::size_t pending = defects.size();

  MinQueue queue;
  dist_[source] = 0.0;
  seen_.push_back(source);
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled_[u]) continue;
    if (pending == 0 && (!want_boundary || d >= to_boundary)) break;
    settled_[u] = 1;
    if (defect_slot_[u] >= 0) {
      to_defect[static_cast<std::size_t>(defect_slot_[u])] = d;
      --pending;
    }
    const EdgeId h = graph_->half_edge_of(u);
    if (h != kNoEdge) to_boundary = std::min(to_boundary, d + graph_->edge(h).weight);
    for (const auto& n : graph_->neighbors(u)) {
      const double w = graph_->edge(n.edge).weight;
      if (!std::isfinite(w)) continue;
      const double nd = d + w;
      if (nd < dist_[n.vertex]) {
        if (dist_[n.vertex] == kInf) seen_.push_back(n.vertex);
        dist_[n.vertex] = nd;
        via_[n.vertex] = n.edge;
        queue.push({nd, n.vertex});
      }
    }
  }
}

void MwpmDecoder::trace_path(VertexId source, VertexId target, std::vector<EdgeId>& out) {
  // Rerun a plain Dijkstra, keeping predecessor edges.
  for (VertexId v : seen_) {
    dist_[v] = kInf;
    via_[v] = kNoEdge;
    settled_[v] = 0;
  }
  seen_.clear();
  MinQueue queue;
  dist_[source] = 0.0;
  seen_.push_back(source);
  queue.push({0.0, source});
  double best_boundary = kInf;
  VertexId best_exit = kBoundaryVertex;
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled_[u]) continue;
    if (target != kBoundaryVertex && settled_[target]) break;
    if (target == kBoundaryVertex && d >= best_boundary) break;
    settled_[u] = 1;
    if (target == kBoundaryVertex) {
      const EdgeId h = graph_->half_edge_of(u);
      if (h != kNoEdge && d + graph_->edge(h).weight < best_boundary) {
        best_boundary = d + graph_->edge(h).weight;
        best_exit = u;
      }
    } else if (u == target) {
      break;
    }
    for (const auto& n : graph_->neighbors(u)) {
      const double w = graph_->edge(n.edge).weight;
      if (!std::isfinite(w)) continue;
      const double nd = d + w;
      if (nd < dist_[n.vertex]) {
        if (dist_[n.vertex] == kInf) seen_.push_back(n.vertex);
        dist_[n.vertex] = nd;
        via_[n.vertex] = n.edge;
        queue.push({nd, n.vertex});
      }
    }
  }
  VertexId v = target;
  if (target == kBoundaryVertex) {
    if (best_exit == kBoundaryVertex) throw std::logic_error("boundary unreachable while tracing");
    out.push_back(graph_->half_edge_of(best_exit));
    v = best_exit;
  } else if (!settled_[target]) {
    throw std::logic_error("defect unreachable while tracing");
  }
  while (v != source) {
    const EdgeId e = via_[v];
    out.push_back(e);
    const GraphEdge& ge = graph_->edge(e);
    v = ge.u == v ? ge.v : ge.u;
  }
}

MwpmResult MwpmDecoder::decode(const Syndrome& syndrome) {
  MwpmResult result;
  const auto& defects = syndrome.defects;
  const std::size_t k = defects.size();
  if (k == 0) return result;
  for (std::size_t i = 0; i < k; ++i) {
    if (defects[i] >= graph_->num_vertices()) throw std::out_of_range("defect outside the decoding graph");
    defect_slot_[defects[i]] = static_cast<std::int32_t>(i);
  }

  std::vector<std::vector<double>> pair(k);
  std::vector<double> to_boundary(k, kInf);
  for (std::size_t i = 0; i < k; ++i) run_dijkstra(defects[i], defects, pair[i], to_boundary[i]);
  for (VertexId v : defects) defect_slot_[v] = -1;

  const bool boundary = graph_->has_half_edges();
  auto scaled = [](double w) { return static_cast<std::int64_t>(std::llround(w * kWeightScale)); };
  std::vector<WeightedEdge> edges;
  std::int64_t max_w = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (std::isfinite(pair[i][j])) {
        edges.push_back({static_cast<int>(i), static_cast<int>(j), scaled(pair[i][j])});
      }
    }
    if (boundary && std::isfinite(to_boundary[i])) {
      edges.push_back({static_cast<int>(i), static_cast<int>(k + i), scaled(to_boundary[i])});
    }
  }
  if (boundary) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        edges.push_back({static_cast<int>(k + i), static_cast<int>(k + j), 0});
      }
    }
  }
  for (const auto& e : edges) max_w = std::max(max_w, e.weight);
  // Every perfect matching has the same number of edges, so maximizing C - w minimizes w.
  for (auto& e : edges) e.weight = max_w + 1 - e.weight;

  const int n = static_cast<int>(boundary ? 2 * k : k);
  const auto mate = max_weight_matching(n, edges, true);
  for (int v = 0; v < n; ++v) {
    if (mate[static_cast<std::size_t>(v)] < 0) {
      throw std::invalid_argument("syndrome has no perfect matching (odd defects without boundary)");
    }
  }

  std::vector<EdgeId> path_edges;
  for (std::size_t i = 0; i < k; ++i) {
    const auto m = static_cast<std::size_t>(mate[i]);
    if (m < k) {
      if (m < i) continue;
      result.matching_weight += pair[i][m];
      trace_path(defects[i], defects[m], path_edges);
    } else {
      result.matching_weight += to_boundary[i];
      trace_path(defects[i], kBoundaryVertex, path_edges);
    }
  }
  std::sort(path_edges.begin(), path_edges.end());
  for (std::size_t i = 0; i < path_edges.size();) {
    std::size_t j = i;
    while (j < path_edges.size() && path_edges[j] == path_edges[i]) ++j;
    if ((j - i) % 2 == 1) result.correction.edges.push_back(path_edges[i]);
    i = j;
  }
  return result;
}

MwpmResult mwpm_decode(const DecodingGraph& graph, const Syndrome& syndrome) {
  MwpmDecoder dec(graph);
  return dec.decode(syndrome);
}

}  // namespace lazydec
