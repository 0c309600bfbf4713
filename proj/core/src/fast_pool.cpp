#include "haarpool/fast_pool.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace haarpool {

WeightTree compute_weights(const CoarseChain& chain) {
  WeightTree wt;
  wt.weights.resize(static_cast<size_t>(chain.num_layers()));
  wt.weights[0].assign(static_cast<size_t>(chain.layer_size(0)), 1.0);
  for (int i = 1; i <= chain.depth(); ++i) {
    const ClusterAssignment& a = chain.assignments[static_cast<size_t>(i - 1)];
    std::vector<double>& w = wt.weights[static_cast<size_t>(i)];
    w.resize(static_cast<size_t>(a.num_clusters()));
    for (int v = 0; v < a.num_clusters(); ++v) {
      int c = a.child_counts[static_cast<size_t>(v)];
      if (c < 1)
        throw std::invalid_argument("compute_weights: empty cluster " + std::to_string(v) +
                                    " at layer " + std::to_string(i - 1));
      w[static_cast<size_t>(v)] = 1.0 / std::sqrt(static_cast<double>(c));
    }
  }
  return wt;
}

WeightedSums weighted_sums(const CoarseChain& chain, const WeightTree& wt,
                           const FeatureMatrix& x, int j, std::uint64_t* mults) {
  if (j < 0 || j > chain.depth())
    throw std::invalid_argument("weighted_sums: no layer " + std::to_string(j));
  if (x.rows() != chain.layer_size(j))
    throw std::invalid_argument("weighted_sums: features have " + std::to_string(x.rows()) +
                                " rows, layer " + std::to_string(j) + " has " +
                                std::to_string(chain.layer_size(j)));
  if (static_cast<int>(wt.weights.size()) != chain.num_layers())
    throw std::invalid_argument("weighted_sums: weight tree does not match the chain");

  WeightedSums ws;
  ws.base_layer = j;
  ws.sums.push_back(x.matrix());
  for (int i = j + 1; i <= chain.depth(); ++i) {
    const ClusterAssignment& a = chain.assignments[static_cast<size_t>(i - 1)];
    const Eigen::MatrixXd& below = ws.sums.back();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(chain.layer_size(i), x.cols());
    for (int v = 0; v < a.num_nodes(); ++v) {
      double w = (i - 1 == j) ? 1.0 : wt.weights[static_cast<size_t>(i - 1)][static_cast<size_t>(v)];
      s.row(a.parent[static_cast<size_t>(v)]) += w * below.row(v);
    }
    if (mults) *mults += static_cast<std::uint64_t>(a.num_nodes()) *
                         static_cast<std::uint64_t>(x.cols());
    ws.sums.push_back(std::move(s));
  }
  return ws;
}

int column_source_layer(const CoarseChain& chain, int j, int ell) {
  if (j < 0 || j >= chain.depth())
    throw std::invalid_argument("column_source_layer: layer " + std::to_string(j) +
                                " has no coarser layer");
  if (ell < 1 || ell > chain.layer_size(j + 1))
    throw std::invalid_argument("column_source_layer: column " + std::to_string(ell) +
                                " outside 1.." + std::to_string(chain.layer_size(j + 1)));
  for (int i = chain.depth(); i > j; --i)
    if (ell <= chain.layer_size(i)) return i;
  return j + 1;  // unreachable: ell <= layer_size(j+1) guarantees a hit
}

CoefficientMatrix fast_haar_pool(const CoarseChain& chain, const WeightTree& wt,
                                 const std::vector<HaarBasis>& bases, const FeatureMatrix& x,
                                 int j, std::uint64_t* mults) {
  if (j < 0 || j >= chain.depth())
    throw std::invalid_argument("fast_haar_pool: layer " + std::to_string(j) +
                                " has no coarser layer");
  if (static_cast<int>(bases.size()) != chain.num_layers())
    throw std::invalid_argument("fast_haar_pool: expected one basis slot per layer");
  for (int i = j + 1; i <= chain.depth(); ++i) {
    const HaarBasis& b = bases[static_cast<size_t>(i)];
    if (b.layer != i || b.matrix.rows() != chain.layer_size(i) ||
        b.matrix.cols() != chain.layer_size(i))
      throw std::invalid_argument("fast_haar_pool: basis at slot " + std::to_string(i) +
                                  " does not match layer " + std::to_string(i));
  }

  WeightedSums ws = weighted_sums(chain, wt, x, j, mults);

  // Scale each coarse layer's sums by its own weights once; every column
  // sourced from that layer reuses the scaled rows.
  std::vector<Eigen::MatrixXd> scaled(ws.sums.size());
  for (int i = j + 1; i <= chain.depth(); ++i) {
    Eigen::MatrixXd p = ws.sums[static_cast<size_t>(i - j)];
    for (int v = 0; v < chain.layer_size(i); ++v)
      p.row(v) *= wt.weights[static_cast<size_t>(i)][static_cast<size_t>(v)];
    if (mults) *mults += static_cast<std::uint64_t>(chain.layer_size(i)) *
                         static_cast<std::uint64_t>(x.cols());
    scaled[static_cast<size_t>(i - j)] = std::move(p);
  }

  int n_out = chain.layer_size(j + 1);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_out, x.cols());
  for (int ell = 1; ell <= n_out; ++ell) {
    int i = column_source_layer(chain, j, ell);
    const Eigen::MatrixXd& p = scaled[static_cast<size_t>(i - j)];
    for (const Triplet& t : bases[static_cast<size_t>(i)].matrix.column(ell - 1))
      out.row(ell - 1) += t.value * p.row(t.row);
    if (mults) *mults += static_cast<std::uint64_t>(
                             bases[static_cast<size_t>(i)].matrix.column(ell - 1).size()) *
                         static_cast<std::uint64_t>(x.cols());
  }
  return CoefficientMatrix::from_matrix(std::move(out));
}

}  // namespace haarpool
