#include "haarpool/transforms.hpp"

#include <stdexcept>
#include <string>

namespace haarpool {

CoefficientMatrix adjoint_transform(const HaarBasis& basis, const FeatureMatrix& x) {
  if (x.rows() != basis.matrix.rows())
    throw std::invalid_argument("adjoint_transform: features have " + std::to_string(x.rows()) +
                                " rows, basis expects " + std::to_string(basis.matrix.rows()));
  return CoefficientMatrix::from_matrix(basis.matrix.transpose_times(x.matrix()));
}

FeatureMatrix forward_transform(const HaarBasis& basis, const CoefficientMatrix& c) {
  if (c.rows() != basis.matrix.cols())
    throw std::invalid_argument("forward_transform: coefficients have " +
                                std::to_string(c.rows()) + " rows, basis expects " +
                                std::to_string(basis.matrix.cols()));
  return FeatureMatrix::from_matrix(basis.matrix.times(c.matrix()));
}

CoefficientMatrix haar_pool(const CompressiveBasis& pool, const FeatureMatrix& x,
                            std::uint64_t* mults) {
  if (x.rows() != pool.matrix.rows())
    throw std::invalid_argument("haar_pool: features have " + std::to_string(x.rows()) +
                                " rows, pooling basis expects " +
                                std::to_string(pool.matrix.rows()));
  return CoefficientMatrix::from_matrix(pool.matrix.transpose_times(x.matrix(), mults));
}

PoolNormCheck pool_norm_check(const CoarseChain& chain, const HaarBasis& basis, int j,
                              const FeatureMatrix& x) {
  if (j < 0 || j >= chain.depth())
    throw std::invalid_argument("pool_norm_check: layer " + std::to_string(j) +
                                " has no coarser layer");
  if (basis.layer != j)
    throw std::invalid_argument("pool_norm_check: basis belongs to layer " +
                                std::to_string(basis.layer));
  if (x.rows() != chain.layer_size(j))
    throw std::invalid_argument("pool_norm_check: features have " + std::to_string(x.rows()) +
                                " rows, layer has " + std::to_string(chain.layer_size(j)));

  PoolNormCheck out;
  CompressiveBasis prefix = compressive_prefix(basis, chain.layer_size(j + 1));
  out.compressive_lhs = haar_pool(prefix, x).matrix().squaredNorm();

  const ClusterAssignment& a = chain.assignments[static_cast<size_t>(j)];
  for (const std::vector<int>& members : a.children()) {
    Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(x.cols());
    for (int v : members) sum += x.matrix().row(v);
    out.compressive_rhs += sum.squaredNorm() / static_cast<double>(members.size());
  }

  out.full_lhs = adjoint_transform(basis, x).matrix().squaredNorm();
  out.full_rhs = x.matrix().squaredNorm();
  return out;
}

}  // namespace haarpool
