#pragma once

#include <Eigen/Dense>

namespace haarpool {

/// Dense node-feature matrix (rows = vertices, cols = feature channels).
/// Construction rejects NaN/Inf entries, so downstream code can assume
/// finite data.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  /// Validating constructor; throws std::invalid_argument naming the first
  /// offending (row, col) if any entry is not finite.
  static FeatureMatrix from_matrix(Eigen::MatrixXd m);

  int rows() const { return static_cast<int>(data_.rows()); }
  int cols() const { return static_cast<int>(data_.cols()); }
  const Eigen::MatrixXd& matrix() const { return data_; }

 private:
  Eigen::MatrixXd data_;
};

/// Transform output has the same shape semantics (rows = basis columns,
/// cols = feature channels).
using CoefficientMatrix = FeatureMatrix;

}  // namespace haarpool
