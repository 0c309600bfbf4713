#include "haarpool/haar_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace haarpool {

namespace {

constexpr double kParentOrthoTol = 1e-8;

// Cluster visit order and per-cluster child order implied by a
// cluster-contiguous ordering. Throws if a cluster is split.
struct OrderedClusters {
  std::vector<int> cluster_order;               // cluster ids, first-appearance order
  std::vector<std::vector<int>> child_order;    // indexed by cluster id
};

OrderedClusters split_ordering(const ClusterAssignment& a, const std::vector<int>& ordering) {
  if (static_cast<int>(ordering.size()) != a.num_nodes())
    throw std::invalid_argument("extend_basis: ordering covers " +
                                std::to_string(ordering.size()) + " vertices, expected " +
                                std::to_string(a.num_nodes()));
  std::vector<char> seen_vertex(static_cast<size_t>(a.num_nodes()), 0);
  std::vector<char> closed(static_cast<size_t>(a.num_clusters()), 0);
  OrderedClusters oc;
  oc.child_order.resize(static_cast<size_t>(a.num_clusters()));
  int current = -1;
  for (int v : ordering) {
    if (v < 0 || v >= a.num_nodes() || seen_vertex[static_cast<size_t>(v)])
      throw std::invalid_argument("extend_basis: ordering is not a permutation");
    seen_vertex[static_cast<size_t>(v)] = 1;
    int p = a.parent[static_cast<size_t>(v)];
    if (p < 0 || p >= a.num_clusters())
      throw std::invalid_argument("extend_basis: parent id out of range");
    if (p != current) {
      if (closed[static_cast<size_t>(p)])
        throw std::invalid_argument("extend_basis: ordering splits cluster " + std::to_string(p));
      if (current >= 0) closed[static_cast<size_t>(current)] = 1;
      oc.cluster_order.push_back(p);
      current = p;
    }
    oc.child_order[static_cast<size_t>(p)].push_back(v);
  }
  if (static_cast<int>(oc.cluster_order.size()) != a.num_clusters())
    throw std::invalid_argument("extend_basis: ordering misses a cluster");
  return oc;
}

// Within-group column coefficients: column ell of an n-point group has
// value pos at the (ell-1)-th member and value neg at members ell..n.
struct StepCoeffs {
  double pos;
  double neg;
};

StepCoeffs step_coeffs(int n, int ell) {
  double tail = static_cast<double>(n - ell + 1);
  double pos = std::sqrt(tail / (tail + 1.0));
  return {pos, -pos / tail};
}

std::vector<Triplet> top_level_triplets(int n, const std::vector<int>& order) {
  std::vector<Triplet> ts;
  ts.reserve(static_cast<size_t>(n) * (static_cast<size_t>(n) + 3) / 2);
  double c0 = 1.0 / std::sqrt(static_cast<double>(n));
  for (int pos = 0; pos < n; ++pos) ts.push_back({order[static_cast<size_t>(pos)], 0, c0});
  for (int ell = 2; ell <= n; ++ell) {
    StepCoeffs sc = step_coeffs(n, ell);
    ts.push_back({order[static_cast<size_t>(ell - 2)], ell - 1, sc.pos});
    for (int pos = ell - 1; pos < n; ++pos)
      ts.push_back({order[static_cast<size_t>(pos)], ell - 1, sc.neg});
  }
  return ts;
}

std::vector<int> identity_order(int n) {
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  return order;
}

// Extension columns: parent value at cluster p spreads to every child of p
// scaled by 1/sqrt(|p|). Appends triplets for columns 0..parent_cols-1.
void append_extension_columns(const SparseMatrix& parent_matrix,
                              const std::vector<std::vector<int>>& child_order,
                              std::vector<Triplet>& ts) {
  std::vector<double> inv_sqrt(child_order.size());
  for (size_t p = 0; p < child_order.size(); ++p) {
    if (child_order[p].empty())
      throw std::invalid_argument("extend_basis: empty cluster " + std::to_string(p));
    inv_sqrt[p] = 1.0 / std::sqrt(static_cast<double>(child_order[p].size()));
  }
  for (const Triplet& t : parent_matrix.entries()) {
    double scaled = t.value * inv_sqrt[static_cast<size_t>(t.row)];
    for (int v : child_order[static_cast<size_t>(t.row)]) ts.push_back({v, t.col, scaled});
  }
}

}  // namespace

Eigen::MatrixXd top_level_basis(int n) {
  if (n < 1) throw std::invalid_argument("top_level_basis: n must be >= 1");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  for (int ell = 2; ell <= n; ++ell) {
    StepCoeffs sc = step_coeffs(n, ell);
    m(ell - 2, ell - 1) = sc.pos;
    for (int r = ell - 1; r < n; ++r) m(r, ell - 1) = sc.neg;
  }
  return m;
}

HaarBasis extend_basis(const HaarBasis& parent, const ClusterAssignment& a,
                       const std::vector<int>& ordering) {
  if (parent.matrix.rows() != parent.matrix.cols())
    throw std::invalid_argument("extend_basis: parent basis is not square");
  if (parent.matrix.cols() != a.num_clusters())
    throw std::invalid_argument("extend_basis: parent basis has " +
                                std::to_string(parent.matrix.cols()) +
                                " columns, assignment has " +
                                std::to_string(a.num_clusters()) + " clusters");
  double ortho = parent.matrix.gram_identity_residual();
  if (ortho > kParentOrthoTol)
    throw std::invalid_argument("extend_basis: parent basis orthonormality residual " +
                                std::to_string(ortho) + " exceeds tolerance");
  OrderedClusters oc = split_ordering(a, ordering);

  int n = a.num_nodes();
  int n_parent = a.num_clusters();
  std::vector<Triplet> ts;
  append_extension_columns(parent.matrix, oc.child_order, ts);

  std::vector<ColumnOrigin> origins(parent.origins);
  origins.resize(static_cast<size_t>(n));
  int col = n_parent;
  for (int p : oc.cluster_order) {
    const std::vector<int>& kids = oc.child_order[static_cast<size_t>(p)];
    int c = static_cast<int>(kids.size());
    for (int k = 2; k <= c; ++k, ++col) {
      StepCoeffs sc = step_coeffs(c, k);
      ts.push_back({kids[static_cast<size_t>(k - 2)], col, sc.pos});
      for (int i = k - 1; i < c; ++i) ts.push_back({kids[static_cast<size_t>(i)], col, sc.neg});
      origins[static_cast<size_t>(col)] = {parent.layer - 1, p, k};
    }
  }

  HaarBasis out;
  out.layer = parent.layer - 1;
  out.matrix = SparseMatrix::from_triplets(n, n, std::move(ts));
  out.origins = std::move(origins);
  return out;
}

std::vector<HaarBasis> build_haar_bases(const CoarseChain& chain) {
  if (chain.layers.empty())
    throw std::invalid_argument("build_haar_bases: chain has no layers");
  int k = chain.depth();
  std::vector<HaarBasis> bases(static_cast<size_t>(k) + 1);

  int top_n = chain.layer_size(k);
  const std::vector<int>& top_order = chain.orderings[static_cast<size_t>(k)];
  if (static_cast<int>(top_order.size()) != top_n)
    throw std::invalid_argument("build_haar_bases: top ordering size mismatch");
  HaarBasis top;
  top.layer = k;
  top.matrix = SparseMatrix::from_triplets(top_n, top_n, top_level_triplets(top_n, top_order));
  top.origins.resize(static_cast<size_t>(top_n));
  for (int ell = 1; ell <= top_n; ++ell)
    top.origins[static_cast<size_t>(ell - 1)] = {k, -1, ell};
  bases[static_cast<size_t>(k)] = std::move(top);

  for (int j = k - 1; j >= 0; --j)
    bases[static_cast<size_t>(j)] =
        extend_basis(bases[static_cast<size_t>(j) + 1], chain.assignments[static_cast<size_t>(j)],
                     chain.orderings[static_cast<size_t>(j)]);
  return bases;
}

CompressiveBasis compressive_prefix(const HaarBasis& basis, int n_next) {
  if (n_next < 0 || n_next > basis.matrix.cols())
    throw std::invalid_argument("compressive_prefix: prefix width " + std::to_string(n_next) +
                                " outside 0.." + std::to_string(basis.matrix.cols()));
  std::vector<Triplet> ts;
  for (int c = 0; c < n_next; ++c)
    for (const Triplet& t : basis.matrix.column(c)) ts.push_back(t);
  CompressiveBasis out;
  out.layer = basis.layer;
  out.matrix = SparseMatrix::from_triplets(basis.matrix.rows(), n_next, std::move(ts));
  return out;
}

CompressiveBasis build_compressive_basis(const CoarseChain& chain, int j) {
  if (j < 0 || j >= chain.depth())
    throw std::invalid_argument("build_compressive_basis: layer " + std::to_string(j) +
                                " has no coarser layer");
  int k = chain.depth();
  // Full basis at the top, then keep only the extension columns on the way
  // down: the prefix of layer i only depends on the prefix of layer i+1
  // (plus, at width layer_size(j+1), the top basis itself).
  int width = chain.layer_size(j + 1);

  // width >= layer_size(k) for every j, so the whole top basis is kept.
  SparseMatrix current;  // layer i basis restricted to `width` columns
  {
    int top_n = chain.layer_size(k);
    current = SparseMatrix::from_triplets(
        top_n, top_n, top_level_triplets(top_n, chain.orderings[static_cast<size_t>(k)]));
  }
  for (int i = k - 1; i >= j; --i) {
    const ClusterAssignment& a = chain.assignments[static_cast<size_t>(i)];
    OrderedClusters oc = split_ordering(a, chain.orderings[static_cast<size_t>(i)]);
    std::vector<Triplet> ts;
    append_extension_columns(current, oc.child_order, ts);
    int cols = current.cols();
    // Within-cluster columns enter the prefix only while the basis is still
    // narrower than the requested width.
    if (cols < width) {
      int col = a.num_clusters();
      for (int p : oc.cluster_order) {
        const std::vector<int>& kids = oc.child_order[static_cast<size_t>(p)];
        int c = static_cast<int>(kids.size());
        for (int kk = 2; kk <= c; ++kk, ++col) {
          if (col >= width) break;
          StepCoeffs sc = step_coeffs(c, kk);
          ts.push_back({kids[static_cast<size_t>(kk - 2)], col, sc.pos});
          for (int t = kk - 1; t < c; ++t) ts.push_back({kids[static_cast<size_t>(t)], col, sc.neg});
        }
        if (col >= width) break;
      }
      cols = std::min(width, a.num_nodes());
    }
    current = SparseMatrix::from_triplets(a.num_nodes(), cols, std::move(ts));
  }
  CompressiveBasis out;
  out.layer = j;
  out.matrix = std::move(current);
  return out;
}

}  // namespace haarpool
