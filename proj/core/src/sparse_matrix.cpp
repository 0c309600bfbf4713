#include "haarpool/sparse_matrix.hpp"

#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace haarpool {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> entries) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("SparseMatrix: negative dimensions");
  std::vector<Triplet> kept;
  kept.reserve(entries.size());
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("SparseMatrix: entry (" + std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") outside " + std::to_string(rows) +
                                  "x" + std::to_string(cols));
    if (!std::isfinite(t.value))
      throw std::invalid_argument("SparseMatrix: non-finite value at (" +
                                  std::to_string(t.row) + ", " + std::to_string(t.col) + ")");
    if (std::abs(t.value) > kPruneThreshold) kept.push_back(t);
  }
  std::sort(kept.begin(), kept.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  for (size_t i = 1; i < kept.size(); ++i)
    if (kept[i].row == kept[i - 1].row && kept[i].col == kept[i - 1].col)
      throw std::invalid_argument("SparseMatrix: duplicate entry at (" +
                                  std::to_string(kept[i].row) + ", " +
                                  std::to_string(kept[i].col) + ")");
  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.entries_ = std::move(kept);
  m.col_ptr_.assign(static_cast<size_t>(cols) + 1, 0);
  for (const Triplet& t : m.entries_) ++m.col_ptr_[static_cast<size_t>(t.col) + 1];
  for (size_t c = 1; c < m.col_ptr_.size(); ++c) m.col_ptr_[c] += m.col_ptr_[c - 1];
  return m;
}

std::span<const Triplet> SparseMatrix::column(int c) const {
  if (c < 0 || c >= cols_)
    throw std::invalid_argument("SparseMatrix::column: index " + std::to_string(c) +
                                " outside 0.." + std::to_string(cols_ - 1));
  auto begin = static_cast<size_t>(col_ptr_[static_cast<size_t>(c)]);
  auto end = static_cast<size_t>(col_ptr_[static_cast<size_t>(c) + 1]);
  return {entries_.data() + begin, end - begin};
}

Eigen::MatrixXd SparseMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
  for (const Triplet& t : entries_) d(t.row, t.col) = t.value;
  return d;
}

Eigen::MatrixXd SparseMatrix::transpose_times(const Eigen::MatrixXd& x,
                                              std::uint64_t* mults) const {
  if (x.rows() != rows_)
    throw std::invalid_argument("SparseMatrix::transpose_times: operand has " +
                                std::to_string(x.rows()) + " rows, expected " +
                                std::to_string(rows_));
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(cols_, x.cols());
  for (const Triplet& t : entries_) y.row(t.col) += t.value * x.row(t.row);
  if (mults) *mults += static_cast<std::uint64_t>(entries_.size()) *
                       static_cast<std::uint64_t>(x.cols());
  return y;
}

Eigen::MatrixXd SparseMatrix::times(const Eigen::MatrixXd& c, std::uint64_t* mults) const {
  if (c.rows() != cols_)
    throw std::invalid_argument("SparseMatrix::times: operand has " + std::to_string(c.rows()) +
                                " rows, expected " + std::to_string(cols_));
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(rows_, c.cols());
  for (const Triplet& t : entries_) y.row(t.row) += t.value * c.row(t.col);
  if (mults) *mults += static_cast<std::uint64_t>(entries_.size()) *
                       static_cast<std::uint64_t>(c.cols());
  return y;
}

double SparseMatrix::gram_identity_residual() const {
  Eigen::SparseMatrix<double> s(rows_, cols_);
  {
    std::vector<Eigen::Triplet<double>> ts;
    ts.reserve(entries_.size());
    for (const Triplet& t : entries_) ts.emplace_back(t.row, t.col, t.value);
    s.setFromTriplets(ts.begin(), ts.end());
  }
  Eigen::SparseMatrix<double> gram = Eigen::SparseMatrix<double>(s.transpose()) * s;
  double residual = 0.0;
  std::vector<char> diag_seen(static_cast<size_t>(cols_), 0);
  for (int c = 0; c < gram.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(gram, c); it; ++it) {
      double expect = it.row() == it.col() ? 1.0 : 0.0;
      if (it.row() == it.col()) diag_seen[static_cast<size_t>(it.row())] = 1;
      residual = std::max(residual, std::abs(it.value() - expect));
    }
  }
  for (int c = 0; c < cols_; ++c)
    if (!diag_seen[static_cast<size_t>(c)]) residual = std::max(residual, 1.0);
  return residual;
}

double sparsity(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw std::invalid_argument("sparsity: empty matrix");
  return static_cast<double>(m.nnz()) /
         (static_cast<double>(m.rows()) * static_cast<double>(m.cols()));
}

}  // namespace haarpool
