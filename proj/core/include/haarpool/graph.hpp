#pragma once

#include <string>
#include <vector>

namespace haarpool {

/// Undirected weighted edge with endpoints in canonical order (u <= v is
/// never stored; self-loops are dropped during normalization, so u < v).
struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

/// Undirected weighted graph over vertices 0..num_nodes-1.
/// Edges are kept canonical: u < v, sorted lexicographically by (u, v),
/// no duplicates, all weights finite and positive.
struct Graph {
  int num_nodes = 0;
  std::vector<Edge> edges;

  /// Sum of incident edge weights per vertex.
  std::vector<double> weighted_degrees() const;
};

/// Builds a canonical Graph from a raw edge list. Self-loops are dropped,
/// parallel edges are merged by summing their weights, endpoints are
/// reordered so u < v, and the edge list is sorted. Throws
/// std::invalid_argument on out-of-range ids, non-positive weights, or
/// non-finite weights. Idempotent on already-canonical input.
Graph normalize_graph(int num_nodes, const std::vector<Edge>& raw_edges);

}  // namespace haarpool
