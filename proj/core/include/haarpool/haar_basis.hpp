#pragma once

#include <Eigen/Dense>
#include <vector>

#include "haarpool/chain.hpp"
#include "haarpool/sparse_matrix.hpp"

namespace haarpool {

/// Where a basis column was generated. Columns created at the coarsest
/// layer have cluster = -1 and within = the column index (1-based);
/// columns created while refining into layer `layer` record the cluster
/// (vertex id of layer layer+1) and the within-cluster index k >= 2. A
/// column extended downwards keeps its origin, so origin.layer is the
/// coarsest layer whose basis contains the column.
struct ColumnOrigin {
  int layer = 0;
  int cluster = -1;
  int within = 0;
};

/// Orthonormal basis for one chain layer, stored sparse. matrix is
/// layer_size x layer_size; column ell (1-based) of the layer-j basis
/// equals the downward extension of column ell of the layer-(j+1) basis
/// whenever ell <= layer_size(j+1), so the first layer_size(j+1) columns
/// form the compressive part.
struct HaarBasis {
  int layer = 0;
  SparseMatrix matrix;
  std::vector<ColumnOrigin> origins;  // one per column
};

/// The compressive part on its own: layer_size(j) x layer_size(j+1).
struct CompressiveBasis {
  int layer = 0;
  SparseMatrix matrix;
};

/// Orthonormal basis of R^n adapted to an ordered vertex set: column 1 is
/// constant 1/sqrt(n); column ell >= 2 takes value
/// sqrt((n-ell+1)/(n-ell+2)) at the (ell-1)-th vertex and
/// -1/sqrt((n-ell+1)(n-ell+2)) at every later vertex. Row r of the result
/// corresponds to the vertex at position r of the given order.
Eigen::MatrixXd top_level_basis(int n);

/// One refinement step: given the orthonormal basis of layer j+1, the
/// cluster assignment from layer j and the canonical (cluster-contiguous)
/// ordering of layer j, produces the layer-j basis. The first
/// layer_size(j+1) columns extend the parent columns (each parent value is
/// spread uniformly over its cluster, scaled by 1/sqrt(cluster size)); the
/// remaining columns are supported inside single clusters and take at most
/// three distinct values each. Throws std::invalid_argument on shape
/// mismatches, non-cluster-contiguous orderings, or a parent basis whose
/// orthonormality residual exceeds 1e-8.
HaarBasis extend_basis(const HaarBasis& parent, const ClusterAssignment& a,
                       const std::vector<int>& ordering);

/// Bases for every layer of the chain, finest first (index j = layer j).
std::vector<HaarBasis> build_haar_bases(const CoarseChain& chain);

/// First n_next columns of a full layer basis.
CompressiveBasis compressive_prefix(const HaarBasis& basis, int n_next);

/// Compressive basis of layer j built directly, without materializing the
/// full layer-j basis. Equivalent to
/// compressive_prefix(build_haar_bases(chain)[j], layer_size(j+1)) but
/// skips the within-cluster columns, which dominate storage on wide
/// layers.
CompressiveBasis build_compressive_basis(const CoarseChain& chain, int j);

}  // namespace haarpool
