#pragma once

#include <string>
#include <vector>

#include "haarpool/graph.hpp"

namespace haarpool {

/// Maps every vertex of a layer to its cluster (= vertex of the next
/// coarser layer). Cluster ids are 0..num_clusters-1 and every cluster is
/// non-empty.
struct ClusterAssignment {
  std::vector<int> parent;        // parent[v] = cluster of vertex v
  std::vector<int> child_counts;  // child_counts[p] = |cluster p|, all >= 1

  int num_nodes() const { return static_cast<int>(parent.size()); }
  int num_clusters() const { return static_cast<int>(child_counts.size()); }

  /// Children of each cluster in ascending vertex id.
  std::vector<std::vector<int>> children() const;
};

/// A coarse-grained chain: layer 0 is the input graph, each subsequent
/// layer is the cluster graph of the previous one. Layer sizes strictly
/// decrease. orderings[j] is the canonical vertex ordering of layer j used
/// when constructing the layer-j basis; for j < K it lists vertices
/// cluster by cluster (cluster-contiguous).
struct CoarseChain {
  std::vector<Graph> layers;                   // K+1 graphs, finest first
  std::vector<ClusterAssignment> assignments;  // K maps, assignments[j]: layer j -> j+1
  std::vector<std::vector<int>> orderings;     // K+1 permutations

  int num_layers() const { return static_cast<int>(layers.size()); }
  int depth() const { return num_layers() - 1; }  // K
  int layer_size(int j) const { return layers[static_cast<size_t>(j)].num_nodes; }
};

/// Structural validation of a chain. Returns human-readable violations,
/// one per defect found (empty result = valid): size monotonicity, parent
/// ids in range, empty clusters, child-count bookkeeping, ordering
/// permutations and their cluster contiguity.
std::vector<std::string> validate_chain(const CoarseChain& chain);

/// Cluster graph: vertices are clusters, and the weight between clusters
/// p != q is the sum of edge weights between them. Intra-cluster edges are
/// dropped (no self-loops). Throws std::invalid_argument if the assignment
/// does not cover g.
Graph induce_coarse_graph(const Graph& g, const ClusterAssignment& a);

}  // namespace haarpool
