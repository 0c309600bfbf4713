#include "haarpool/chain.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace haarpool {

std::vector<std::vector<int>> ClusterAssignment::children() const {
  std::vector<std::vector<int>> out(static_cast<size_t>(num_clusters()));
  for (int v = 0; v < num_nodes(); ++v) {
    int p = parent[static_cast<size_t>(v)];
    if (p < 0 || p >= num_clusters())
      throw std::invalid_argument("ClusterAssignment: parent id out of range");
    out[static_cast<size_t>(p)].push_back(v);
  }
  return out;
}

namespace {

void validate_assignment(const CoarseChain& chain, int j, std::vector<std::string>& out) {
  const ClusterAssignment& a = chain.assignments[static_cast<size_t>(j)];
  int fine = chain.layer_size(j);
  int coarse = chain.layer_size(j + 1);
  auto layer = [&](int l) { return "layer " + std::to_string(l); };

  if (a.num_nodes() != fine)
    out.push_back("assignment at " + layer(j) + " covers " + std::to_string(a.num_nodes()) +
                  " vertices, expected " + std::to_string(fine));
  if (a.num_clusters() != coarse)
    out.push_back("assignment at " + layer(j) + " has " + std::to_string(a.num_clusters()) +
                  " clusters, expected " + std::to_string(coarse));

  std::vector<int> seen(static_cast<size_t>(a.num_clusters()), 0);
  for (int v = 0; v < a.num_nodes(); ++v) {
    int p = a.parent[static_cast<size_t>(v)];
    if (p < 0 || p >= a.num_clusters()) {
      out.push_back("orphan vertex " + std::to_string(v) + " at " + layer(j) +
                    ": parent id " + std::to_string(p) + " out of range");
      continue;
    }
    ++seen[static_cast<size_t>(p)];
  }
  for (int p = 0; p < a.num_clusters(); ++p) {
    int declared = a.child_counts[static_cast<size_t>(p)];
    int actual = seen[static_cast<size_t>(p)];
    if (actual == 0)
      out.push_back("empty cluster " + std::to_string(p) + " at " + layer(j));
    if (declared != actual)
      out.push_back("cluster " + std::to_string(p) + " at " + layer(j) + " declares " +
                    std::to_string(declared) + " children but has " + std::to_string(actual));
  }
}

void validate_ordering(const CoarseChain& chain, int j, std::vector<std::string>& out) {
  const std::vector<int>& ord = chain.orderings[static_cast<size_t>(j)];
  int n = chain.layer_size(j);
  if (static_cast<int>(ord.size()) != n) {
    out.push_back("ordering at layer " + std::to_string(j) + " has " +
                  std::to_string(ord.size()) + " entries, expected " + std::to_string(n));
    return;
  }
  std::vector<int> seen(static_cast<size_t>(n), 0);
  for (int v : ord) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)]++) {
      out.push_back("ordering at layer " + std::to_string(j) + " is not a permutation");
      return;
    }
  }
  // Below the top layer the ordering must keep each cluster contiguous.
  if (j < chain.depth() && static_cast<int>(chain.assignments.size()) > j) {
    const ClusterAssignment& a = chain.assignments[static_cast<size_t>(j)];
    if (a.num_nodes() != n) return;  // already reported above
    std::vector<int> closed(static_cast<size_t>(a.num_clusters()), 0);
    int current = -1;
    for (int v : ord) {
      int p = a.parent[static_cast<size_t>(v)];
      if (p < 0 || p >= a.num_clusters()) return;
      if (p != current) {
        if (closed[static_cast<size_t>(p)]) {
          out.push_back("ordering at layer " + std::to_string(j) +
                        " splits cluster " + std::to_string(p));
          return;
        }
        if (current >= 0) closed[static_cast<size_t>(current)] = 1;
        current = p;
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate_chain(const CoarseChain& chain) {
  std::vector<std::string> out;
  if (chain.layers.empty()) {
    out.push_back("chain has no layers");
    return out;
  }
  if (chain.layers.front().num_nodes < 1)
    out.push_back("layer 0 is empty");
  for (int j = 0; j + 1 < chain.num_layers(); ++j) {
    if (chain.layer_size(j + 1) >= chain.layer_size(j))
      out.push_back("sizes not strictly decreasing at layer " + std::to_string(j + 1));
  }
  if (static_cast<int>(chain.assignments.size()) != chain.depth())
    out.push_back("chain has " + std::to_string(chain.assignments.size()) +
                  " assignments, expected " + std::to_string(chain.depth()));
  for (int j = 0; j < static_cast<int>(chain.assignments.size()) && j < chain.depth(); ++j)
    validate_assignment(chain, j, out);
  if (static_cast<int>(chain.orderings.size()) != chain.num_layers())
    out.push_back("chain has " + std::to_string(chain.orderings.size()) +
                  " orderings, expected " + std::to_string(chain.num_layers()));
  for (int j = 0; j < static_cast<int>(chain.orderings.size()) && j < chain.num_layers(); ++j)
    validate_ordering(chain, j, out);
  return out;
}

Graph induce_coarse_graph(const Graph& g, const ClusterAssignment& a) {
  if (a.num_nodes() != g.num_nodes)
    throw std::invalid_argument("induce_coarse_graph: assignment covers " +
                                std::to_string(a.num_nodes()) + " vertices, graph has " +
                                std::to_string(g.num_nodes));
  std::map<std::pair<int, int>, double> acc;
  for (const Edge& e : g.edges) {
    int p = a.parent[static_cast<size_t>(e.u)];
    int q = a.parent[static_cast<size_t>(e.v)];
    if (p < 0 || p >= a.num_clusters() || q < 0 || q >= a.num_clusters())
      throw std::invalid_argument("induce_coarse_graph: parent id out of range");
    if (p == q) continue;
    acc[{std::min(p, q), std::max(p, q)}] += e.w;
  }
  Graph coarse;
  coarse.num_nodes = a.num_clusters();
  coarse.edges.reserve(acc.size());
  for (const auto& [key, w] : acc) coarse.edges.push_back({key.first, key.second, w});
  return coarse;
}

}  // namespace haarpool
