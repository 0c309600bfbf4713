#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "haarpool/chain.hpp"
#include "haarpool/feature_matrix.hpp"
#include "haarpool/haar_basis.hpp"

namespace haarpool {

/// Pinned tolerances for the verification checks.
namespace tol {
inline constexpr double kOrthonormality = 1e-10;
inline constexpr double kReconstruction = 1e-10;
inline constexpr double kParsevalRel = 1e-12;
inline constexpr double kPoolNorm = 1e-10;
inline constexpr double kClusterConstance = 1e-12;
inline constexpr double kFastDense = 1e-10;
inline constexpr double kSiblingPermutation = 1e-12;
inline constexpr double kCascade = 1e-12;
}  // namespace tol

struct VerifyCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  bool pass = false;
  std::vector<VerifyCheck> checks;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  int feature_dim = 4;
  bool full_stack = false;  // also cascade through every layer (needs a 1-vertex top)
};

/// Runs the whole battery against a chain and its bases: structure, basis
/// shapes, per-layer orthonormality and reconstruction, the two pooled
/// norm identities, cluster constance of the compressive columns, column
/// locality, and fast/dense pooling agreement. x0, when given, is used as
/// the layer-0 features; random features (seeded) fill in everywhere else.
VerifyReport run_verify(const CoarseChain& chain, const std::vector<HaarBasis>& bases,
                        const FeatureMatrix* x0, const VerifyOptions& opts);

std::string write_verify_json(const VerifyReport& report);

}  // namespace haarpool
