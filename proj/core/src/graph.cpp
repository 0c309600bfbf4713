#include "haarpool/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace haarpool {

std::vector<double> Graph::weighted_degrees() const {
  std::vector<double> deg(static_cast<size_t>(num_nodes), 0.0);
  for (const Edge& e : edges) {
    deg[static_cast<size_t>(e.u)] += e.w;
    deg[static_cast<size_t>(e.v)] += e.w;
  }
  return deg;
}

Graph normalize_graph(int num_nodes, const std::vector<Edge>& raw_edges) {
  if (num_nodes < 0)
    throw std::invalid_argument("normalize_graph: negative node count");
  std::map<std::pair<int, int>, double> merged;
  for (const Edge& e : raw_edges) {
    if (e.u < 0 || e.u >= num_nodes || e.v < 0 || e.v >= num_nodes)
      throw std::invalid_argument("normalize_graph: edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ") references a vertex outside 0.." +
                                  std::to_string(num_nodes - 1));
    if (!std::isfinite(e.w))
      throw std::invalid_argument("normalize_graph: non-finite weight on edge (" +
                                  std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    if (e.w <= 0.0)
      throw std::invalid_argument("normalize_graph: non-positive weight on edge (" +
                                  std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    if (e.u == e.v) continue;
    int a = std::min(e.u, e.v);
    int b = std::max(e.u, e.v);
    merged[{a, b}] += e.w;
  }
  Graph g;
  g.num_nodes = num_nodes;
  g.edges.reserve(merged.size());
  for (const auto& [key, w] : merged) g.edges.push_back({key.first, key.second, w});
  return g;
}

}  // namespace haarpool
