#pragma once

#include <cstdint>

#include "haarpool/chain.hpp"
#include "haarpool/feature_matrix.hpp"
#include "haarpool/haar_basis.hpp"

namespace haarpool {

/// Analysis: c = B^T x. Throws std::invalid_argument on a row-count
/// mismatch between x and the basis.
CoefficientMatrix adjoint_transform(const HaarBasis& basis, const FeatureMatrix& x);

/// Synthesis: x = B c, inverse of adjoint_transform for a full basis.
FeatureMatrix forward_transform(const HaarBasis& basis, const CoefficientMatrix& c);

/// Pooling step: y = P^T x with P the compressive basis of a layer, so y
/// has one row per coarse vertex. Optionally counts multiplies.
CoefficientMatrix haar_pool(const CompressiveBasis& pool, const FeatureMatrix& x,
                            std::uint64_t* mults = nullptr);

/// Both norm identities the pooled coefficients satisfy at layer j:
///   compressive:  ||P^T x||_F^2 = sum over clusters p of |sum_{v in p} x(v)|^2 / |p|
///   full:         ||B^T x||_F^2 = ||x||_F^2
/// Returns each side, evaluated independently.
struct PoolNormCheck {
  double compressive_lhs = 0.0;
  double compressive_rhs = 0.0;
  double full_lhs = 0.0;
  double full_rhs = 0.0;
};

PoolNormCheck pool_norm_check(const CoarseChain& chain, const HaarBasis& basis, int j,
                              const FeatureMatrix& x);

}  // namespace haarpool
