#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

namespace haarpool {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Triplet-form sparse matrix in canonical order: entries sorted by
/// (col, row), no duplicates, every stored magnitude above the prune
/// threshold. Column-sorted storage gives cheap per-column access, which
/// is what the pooling kernels iterate over.
class SparseMatrix {
 public:
  /// Magnitudes at or below this are treated as structural zeros and
  /// dropped at construction time.
  static constexpr double kPruneThreshold = 1e-14;

  SparseMatrix() = default;

  /// Sorts, prunes near-zeros and builds the column index. Throws
  /// std::invalid_argument on out-of-range indices or duplicate (row, col).
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(entries_.size()); }
  const std::vector<Triplet>& entries() const { return entries_; }

  /// Stored entries of one column, ascending row.
  std::span<const Triplet> column(int c) const;

  Eigen::MatrixXd to_dense() const;

  /// A^T * x. Optionally counts one multiply per stored entry per feature
  /// channel into *mults.
  Eigen::MatrixXd transpose_times(const Eigen::MatrixXd& x, std::uint64_t* mults = nullptr) const;

  /// A * c, same counting convention.
  Eigen::MatrixXd times(const Eigen::MatrixXd& c, std::uint64_t* mults = nullptr) const;

  /// max |A^T A - I|, the orthonormality residual of the column set.
  double gram_identity_residual() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Triplet> entries_;
  std::vector<std::int64_t> col_ptr_;  // cols_+1 offsets into entries_
};

/// Fill fraction nnz / (rows * cols).
double sparsity(const SparseMatrix& m);

}  // namespace haarpool
