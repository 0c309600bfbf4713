#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "haarpool/chain.hpp"
#include "haarpool/graph.hpp"

namespace haarpool {

enum class ClusterMethod { kSpectral, kDegreeGreedy };

ClusterMethod parse_cluster_method(const std::string& name);
std::string cluster_method_name(ClusterMethod m);

/// How to derive the coarse layer sizes: either an explicit strictly
/// decreasing size list, or a per-level reduction ratio applied for a
/// fixed number of levels (sizes floor at 1 and the chain stops growing
/// once it reaches a single vertex).
struct ChainSpec {
  std::vector<int> level_sizes;           // used when non-empty
  std::optional<double> reduction_ratio;  // in (0, 1)
  int num_levels = 0;                     // levels to derive from the ratio
  ClusterMethod method = ClusterMethod::kSpectral;
  std::uint64_t seed = 0;
};

/// Thrown when the iterative eigensolver fails to converge.
class EigensolverError : public std::runtime_error {
 public:
  EigensolverError(const std::string& msg, int iterations)
      : std::runtime_error(msg), iterations_(iterations) {}
  int iterations() const { return iterations_; }

 private:
  int iterations_;
};

/// Spectral clustering into exactly k non-empty clusters: k smallest
/// eigenvectors of the symmetric normalized Laplacian (weighted degrees),
/// rows normalized to unit length, then seeded k-means. Isolated vertices
/// are excluded from the embedding; afterwards they found fresh singleton
/// clusters while fewer than k exist, and the rest join the smallest
/// cluster (ties toward the lowest cluster id). Cluster ids follow first
/// appearance in ascending vertex id. Deterministic given the seed.
ClusterAssignment spectral_cluster(const Graph& g, int k, std::uint64_t seed);

/// Degree-based baseline: the k highest weighted-degree vertices seed
/// clusters 0..k-1 (degree ties toward the lower vertex id); every other
/// vertex joins the seed it is most strongly connected to, all ties
/// (including no connection) toward the lowest cluster id. The seed
/// parameter is accepted for interface parity and ignored.
ClusterAssignment degree_greedy_cluster(const Graph& g, int k, std::uint64_t seed);

/// Vertices of g sorted by descending weighted degree, ties ascending id.
std::vector<int> degree_order(const Graph& g);

/// Cluster-contiguous ordering of g's vertices: clusters sorted by
/// descending weighted degree in the induced coarse graph (ties ascending
/// cluster id), members within each cluster by descending degree in g
/// (ties ascending id).
std::vector<int> canonical_order(const Graph& g, const ClusterAssignment& a);

/// Builds the full coarse-grained chain for a graph: clusters level by
/// level, induces each coarse graph, and records canonical orderings for
/// every layer (the top layer uses plain degree order).
CoarseChain build_chain(const Graph& g, const ChainSpec& spec);

}  // namespace haarpool
