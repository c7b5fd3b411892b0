#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lazydec {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 0;
};

/// Maximum-weight matching on a general graph with Edmonds' blossom algorithm and a primal-dual
/// update, O(n^3). With `max_cardinality` the result is the heaviest among the maximum-cardinality
/// matchings. Returns mate[v], or -1 for unmatched vertices.
std::vector<int> max_weight_matching(int num_vertices, std::span<const WeightedEdge> edges,
                                     bool max_cardinality);

}  // namespace lazydec
