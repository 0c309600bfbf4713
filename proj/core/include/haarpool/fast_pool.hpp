#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "haarpool/chain.hpp"
#include "haarpool/feature_matrix.hpp"
#include "haarpool/haar_basis.hpp"

namespace haarpool {

/// Per-layer aggregation weights: weights[i][v] = 1/sqrt(children of v) for
/// i >= 1, and 1 for every vertex of layer 0 (leaves count as their own
/// single child).
struct WeightTree {
  std::vector<std::vector<double>> weights;
};

WeightTree compute_weights(const CoarseChain& chain);

/// Cascade of weighted cluster sums seeded at layer j: sums[0] is X itself
/// and sums[i-j](v) aggregates the level below. The hop leaving the seed
/// layer uses weight 1 regardless of the global weight tree: pooling at
/// layer j treats layer j as the data layer, so its vertices enter their
/// clusters unscaled (the same re-basing the j = 0 weights encode).
struct WeightedSums {
  int base_layer = 0;
  std::vector<Eigen::MatrixXd> sums;  // indexed by layer - base_layer
};

WeightedSums weighted_sums(const CoarseChain& chain, const WeightTree& wt,
                           const FeatureMatrix& x, int j, std::uint64_t* mults = nullptr);

/// The coarsest layer whose basis still has a column ell (1-based):
/// layer_size(i+1) < ell <= layer_size(i), with layer_size(K+1) read as 0.
/// These ranges partition 1..layer_size(j+1), so every pooled row has
/// exactly one source layer.
int column_source_layer(const CoarseChain& chain, int j, int ell);

/// Pooling without materializing the layer-j basis: identical output to
/// haar_pool with the layer-j compressive basis (up to roundoff), but
/// every output row is assembled at the coarse layer its column came from,
/// using the weighted sums. bases must hold full bases for layers j+1..K
/// (entries below j+1 are ignored). Cost is linear in the chain size per
/// feature channel, plus the coarse-layer column supports.
CoefficientMatrix fast_haar_pool(const CoarseChain& chain, const WeightTree& wt,
                                 const std::vector<HaarBasis>& bases, const FeatureMatrix& x,
                                 int j, std::uint64_t* mults = nullptr);

}  // namespace haarpool
