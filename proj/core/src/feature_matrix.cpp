#include "haarpool/feature_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace haarpool {

FeatureMatrix FeatureMatrix::from_matrix(Eigen::MatrixXd m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (!std::isfinite(m(r, c)))
        throw std::invalid_argument("FeatureMatrix: non-finite entry at row " +
                                    std::to_string(r) + ", col " + std::to_string(c));
  FeatureMatrix out;
  out.data_ = std::move(m);
  return out;
}

}  // namespace haarpool
