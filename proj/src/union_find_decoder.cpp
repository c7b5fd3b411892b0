#include "lazydec/union_find_decoder.h"

#include <algorithm>
#include <stdexcept>

namespace lazydec {

UnionFindDecoder::UnionFindDecoder(const DecodingGraph& graph)
    : graph_(&graph), num_vertices_(static_cast<std::uint32_t>(graph.num_vertices())) {
  const std::size_t nodes = graph.num_vertices() + graph.num_half_edges();
  parent_.resize(nodes);
  size_.resize(nodes);
  parity_.resize(nodes);
  boundary_.resize(nodes);
  touched_.assign(nodes, 0);
  frontier_.resize(nodes);
  mark_.assign(nodes, 0);
  support_.assign(graph.num_all_edges(), 0);
}

UnionFindDecoder::Node UnionFindDecoder::find(Node x) {
  Node root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const Node next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

UnionFindDecoder::Node UnionFindDecoder::unite(Node a, Node b) {
  a = find(a);
  b = find(b);
  if (a == b) return a;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  parity_[a] += parity_[b];
  boundary_[a] |= boundary_[b];
  auto& fa = frontier_[a];
  auto& fb = frontier_[b];
  if (fa.size() < fb.size()) fa.swap(fb);
  fa.insert(fa.end(), fb.begin(), fb.end());
  fb.clear();
  return a;
}

void UnionFindDecoder::touch(Node x) {
  if (touched_[x]) return;
  touched_[x] = 1;
  touched_nodes_.push_back(x);
  parent_[x] = x;
  size_[x] = 1;
  parity_[x] = 0;
  boundary_[x] = x >= num_vertices_;
  frontier_[x].clear();
  if (x < num_vertices_) frontier_[x].push_back(x);
}

UnionFindDecoder::Node UnionFindDecoder::other_end(EdgeId e, Node from) const {
  const GraphEdge& ge = graph_->edge(e);
  if (ge.is_half()) {
    const Node virt = num_vertices_ + static_cast<Node>(e - graph_->num_edges());
    return from == virt ? ge.u : virt;
  }
  return ge.u == from ? ge.v : ge.u;
}

bool UnionFindDecoder::fully_grown(VertexId v) const {
  for (const auto& n : graph_->neighbors(v)) {
    if (support_[n.edge] < 2) return false;
  }
  const EdgeId h = graph_->half_edge_of(v);
  return h == kNoEdge || support_[h] >= 2;
}

void UnionFindDecoder::reset() {
  for (Node x : touched_nodes_) {
    touched_[x] = 0;
    mark_[x] = 0;
    frontier_[x].clear();
  }
  for (EdgeId e : touched_edges_) support_[e] = 0;
  touched_nodes_.clear();
  touched_edges_.clear();
  grown_.clear();
}

Correction UnionFindDecoder::decode(const Syndrome& syndrome) {
  reset();
  Correction out;
  if (syndrome.defects.empty()) return out;
  for (VertexId v : syndrome.defects) {
    if (v >= num_vertices_) throw std::out_of_range("defect outside the decoding graph");
    touch(v);
    parity_[v] = 1;
    mark_[v] = 1;
  }

  std::vector<Node> active;
  std::vector<Node> roots(syndrome.defects.begin(), syndrome.defects.end());
  while (true) {
    active.clear();
    for (Node r : roots) {
      const Node root = find(r);
      if (invalid(root)) active.push_back(root);
    }
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());
    if (active.empty()) break;

    bool progress = false;
    fusion_.clear();
    auto grow = [&](EdgeId e) {
      if (support_[e] >= 2) return;
      if (support_[e] == 0) touched_edges_.push_back(e);
      progress = true;
      if (++support_[e] == 2) fusion_.push_back(e);
    };
    for (Node root : active) {
      for (VertexId v : frontier_[root]) {
        for (const auto& n : graph_->neighbors(v)) grow(n.edge);
        const EdgeId h = graph_->half_edge_of(v);
        if (h != kNoEdge) grow(h);
      }
    }
    if (!progress) throw std::invalid_argument("odd cluster cannot reach a partner or the boundary");

    for (EdgeId e : fusion_) {
      grown_.push_back(e);
      const Node a = graph_->edge(e).u;
      const Node b = other_end(e, a);
      touch(a);
      touch(b);
      unite(a, b);
    }
    for (Node r : active) {
      const Node root = find(r);
      auto& f = frontier_[root];
      f.erase(std::remove_if(f.begin(), f.end(), [&](VertexId v) { return fully_grown(v); }), f.end());
    }
    roots.swap(active);
  }

  peel(syndrome, out);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

void UnionFindDecoder::peel(const Syndrome& syndrome, Correction& out) {
  (void)syndrome;
  // Spanning forest of the grown edges, rooted at a boundary node where the cluster has one.
  std::vector<Node> start_of;  // parallel to cluster roots
  std::vector<Node> cluster_roots;
  for (Node x : touched_nodes_) {
    const Node r = find(x);
    auto it = std::find(cluster_roots.begin(), cluster_roots.end(), r);
    if (it == cluster_roots.end()) {
      cluster_roots.push_back(r);
      start_of.push_back(x);
    } else {
      Node& s = start_of[static_cast<std::size_t>(it - cluster_roots.begin())];
      if (s < num_vertices_ && x >= num_vertices_) s = x;
    }
  }

  // Grown-edge adjacency restricted to touched nodes.
  std::vector<std::pair<Node, EdgeId>> links;
  links.reserve(2 * grown_.size());
  for (EdgeId e : grown_) {
    const Node a = graph_->edge(e).u;
    const Node b = other_end(e, a);
    links.push_back({a, e});
    links.push_back({b, e});
  }
  std::sort(links.begin(), links.end());

  std::vector<Node> order;
  std::vector<std::pair<Node, EdgeId>> up;  // parent link of order[i]
  std::vector<Node> visited;
  auto is_visited = [&](Node x) { return std::binary_search(visited.begin(), visited.end(), x); };
  for (std::size_t c = 0; c < cluster_roots.size(); ++c) {
    const Node start = start_of[c];
    order.clear();
    up.clear();
    visited.clear();
    order.push_back(start);
    up.push_back({start, kNoEdge});
    visited.push_back(start);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Node x = order[i];
      auto it = std::lower_bound(links.begin(), links.end(), std::make_pair(x, EdgeId{0}));
      for (; it != links.end() && it->first == x; ++it) {
        const Node y = other_end(it->second, x);
        if (is_visited(y)) continue;
        visited.insert(std::upper_bound(visited.begin(), visited.end(), y), y);
        order.push_back(y);
        up.push_back({x, it->second});
      }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
      const Node x = order[i];
      if (!mark_[x]) continue;
      mark_[x] = 0;
      mark_[up[i].first] ^= 1u;
      out.edges.push_back(up[i].second);
    }
    if (mark_[start] && start < num_vertices_) {
      throw std::logic_error("peeling left an unmatched defect");
    }
    mark_[start] = 0;
  }
}

Correction uf_decode(const DecodingGraph& graph, const Syndrome& syndrome) {
  UnionFindDecoder dec(graph);
  return dec.decode(syndrome);
}

}  // namespace lazydec
