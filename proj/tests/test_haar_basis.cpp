#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "haarpool/haar_basis.hpp"
#include "support/fixtures.hpp"

using namespace haarpool;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

int distinct_values(const SparseMatrix& m, int col) {
  std::set<double> vals;
  for (const Triplet& t : m.column(col)) vals.insert(t.value);
  if (static_cast<int>(m.column(col).size()) < m.rows()) vals.insert(0.0);
  return static_cast<int>(vals.size());
}

}  // namespace

TEST_SUITE_BEGIN("haar_basis");

TEST_CASE("top_level_basis closed forms for n = 1, 2, 3") {
  Eigen::MatrixXd b1 = top_level_basis(1);
  CHECK(b1(0, 0) == 1.0);

  Eigen::MatrixXd b2 = top_level_basis(2);
  CHECK(b2(0, 0) == doctest::Approx(1 / kSqrt2));
  CHECK(b2(1, 0) == doctest::Approx(1 / kSqrt2));
  CHECK(b2(0, 1) == doctest::Approx(1 / kSqrt2));
  CHECK(b2(1, 1) == doctest::Approx(-1 / kSqrt2));

  Eigen::MatrixXd b3 = top_level_basis(3);
  CHECK(b3(0, 0) == doctest::Approx(1 / kSqrt3));
  CHECK(b3(0, 1) == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(b3(1, 1) == doctest::Approx(-1 / kSqrt6));
  CHECK(b3(2, 1) == doctest::Approx(-1 / kSqrt6));
  CHECK(b3(0, 2) == doctest::Approx(0.0));
  CHECK(b3(1, 2) == doctest::Approx(1 / kSqrt2));
  CHECK(b3(2, 2) == doctest::Approx(-1 / kSqrt2));
}

TEST_CASE("top_level_basis is orthonormal up to n = 40") {
  for (int n : {1, 2, 3, 5, 8, 13, 21, 40}) {
    Eigen::MatrixXd b = top_level_basis(n);
    double residual =
        (b.transpose() * b - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    CHECK(residual < 1e-12);
  }
}

TEST_CASE("top_level_basis rejects n < 1") {
  CHECK_THROWS_AS(top_level_basis(0), std::invalid_argument);
}

TEST_CASE("extend_basis of a single 2-vertex cluster reproduces the 2-point basis") {
  HaarBasis parent;
  parent.layer = 1;
  parent.matrix = SparseMatrix::from_triplets(1, 1, {{0, 0, 1.0}});
  parent.origins = {{1, -1, 1}};
  ClusterAssignment a;
  a.parent = {0, 0};
  a.child_counts = {2};
  HaarBasis child = extend_basis(parent, a, {0, 1});
  Eigen::MatrixXd d = child.matrix.to_dense();
  CHECK(child.layer == 0);
  CHECK(d(0, 0) == doctest::Approx(1 / kSqrt2));
  CHECK(d(1, 0) == doctest::Approx(1 / kSqrt2));
  CHECK(d(0, 1) == doctest::Approx(1 / kSqrt2));
  CHECK(d(1, 1) == doctest::Approx(-1 / kSqrt2));
}

TEST_CASE("extend_basis with singleton clusters permutes parent rows") {
  // Identity assignment: each cluster has one child, so the child basis is
  // the parent with rows rearranged by cluster id, unscaled.
  std::mt19937_64 rng(5);
  Graph g = testing::random_test_graph(rng, 6, 0.5);
  CoarseChain chain;
  ClusterAssignment a;
  a.parent = {2, 0, 4, 1, 5, 3};  // vertex v belongs to cluster a.parent[v]
  a.child_counts = {1, 1, 1, 1, 1, 1};

  HaarBasis parent;
  parent.layer = 1;
  std::vector<Triplet> ts;
  Eigen::MatrixXd top = top_level_basis(6);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c)
      if (top(r, c) != 0.0) ts.push_back({r, c, top(r, c)});
  parent.matrix = SparseMatrix::from_triplets(6, 6, ts);
  parent.origins.resize(6);

  HaarBasis child = extend_basis(parent, a, {0, 1, 2, 3, 4, 5});
  Eigen::MatrixXd d = child.matrix.to_dense();
  for (int v = 0; v < 6; ++v)
    for (int c = 0; c < 6; ++c)
      CHECK(d(v, c) == top(a.parent[static_cast<size_t>(v)], c));
}

TEST_CASE("extend_basis rejects mismatched and malformed inputs") {
  HaarBasis parent;
  parent.layer = 1;
  parent.matrix = SparseMatrix::from_triplets(1, 1, {{0, 0, 1.0}});
  parent.origins = {{1, -1, 1}};
  ClusterAssignment a;
  a.parent = {0, 0, 1, 1};
  a.child_counts = {2, 2};
  SUBCASE("cluster count mismatch") {
    CHECK_THROWS_AS(extend_basis(parent, a, {0, 1, 2, 3}), std::invalid_argument);
  }
  SUBCASE("ordering splits a cluster") {
    HaarBasis parent2;
    parent2.layer = 1;
    parent2.matrix = SparseMatrix::from_triplets(
        2, 2, {{0, 0, 1 / kSqrt2}, {1, 0, 1 / kSqrt2}, {0, 1, 1 / kSqrt2}, {1, 1, -1 / kSqrt2}});
    parent2.origins = {{1, -1, 1}, {1, -1, 2}};
    CHECK_THROWS_AS(extend_basis(parent2, a, {0, 2, 1, 3}), std::invalid_argument);
  }
  SUBCASE("non-orthonormal parent") {
    HaarBasis bad;
    bad.layer = 1;
    bad.matrix = SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {1, 1, 0.5}});
    bad.origins = {{1, -1, 1}, {1, -1, 2}};
    CHECK_THROWS_AS(extend_basis(bad, a, {0, 1, 2, 3}), std::invalid_argument);
  }
}

TEST_CASE("figure chain bases have the expected shapes and supports") {
  CoarseChain chain = testing::figure_chain();
  std::vector<HaarBasis> bases = build_haar_bases(chain);
  REQUIRE(bases.size() == 3);
  CHECK(bases[0].matrix.rows() == 8);
  CHECK(bases[1].matrix.rows() == 3);
  CHECK(bases[2].matrix.rows() == 1);

  CompressiveBasis p0 = compressive_prefix(bases[0], 3);
  CompressiveBasis p1 = compressive_prefix(bases[1], 1);
  CHECK(p0.matrix.rows() == 8);
  CHECK(p0.matrix.cols() == 3);
  CHECK(p1.matrix.rows() == 3);
  CHECK(p1.matrix.cols() == 1);

  // The 3 -> 1 pooling column is constant 1/sqrt(3).
  REQUIRE(p1.matrix.column(0).size() == 3);
  for (const Triplet& t : p1.matrix.column(0))
    CHECK(t.value == doctest::Approx(1 / kSqrt3).epsilon(1e-15));

  // Every column of the finest basis carries at most 3 distinct values.
  for (int c = 0; c < bases[0].matrix.cols(); ++c)
    CHECK(distinct_values(bases[0].matrix, c) <= 3);
}

TEST_CASE("trivial one-cluster chain gives the constant pooling column") {
  Graph g = normalize_graph(5, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
  ClusterAssignment a;
  a.parent = {0, 0, 0, 0, 0};
  a.child_counts = {5};
  CoarseChain chain;
  chain.layers = {g, induce_coarse_graph(g, a)};
  chain.orderings = {canonical_order(g, a), {0}};
  chain.assignments = {a};
  std::vector<HaarBasis> bases = build_haar_bases(chain);
  CompressiveBasis prefix = compressive_prefix(bases[0], 1);
  REQUIRE(prefix.matrix.column(0).size() == 5);
  for (const Triplet& t : prefix.matrix.column(0))
    CHECK(t.value == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("bases are orthonormal and localized on random chains") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    CoarseChain chain = testing::random_chain(seed);
    std::vector<HaarBasis> bases = build_haar_bases(chain);
    for (int j = 0; j <= chain.depth(); ++j) {
      const HaarBasis& b = bases[static_cast<size_t>(j)];
      CHECK(b.matrix.gram_identity_residual() < 1e-10);
      int n_next = j < chain.depth() ? chain.layer_size(j + 1) : 0;
      for (int c = n_next; c < b.matrix.cols() && j < chain.depth(); ++c)
        CHECK(distinct_values(b.matrix, c) <= 3);
    }
  }
}

TEST_CASE("compressive columns are constant within clusters") {
  for (std::uint64_t seed = 30; seed < 40; ++seed) {
    CoarseChain chain = testing::random_chain(seed);
    std::vector<HaarBasis> bases = build_haar_bases(chain);
    for (int j = 0; j < chain.depth(); ++j) {
      CompressiveBasis prefix = compressive_prefix(bases[static_cast<size_t>(j)],
                                                   chain.layer_size(j + 1));
      Eigen::MatrixXd d = prefix.matrix.to_dense();
      const ClusterAssignment& a = chain.assignments[static_cast<size_t>(j)];
      for (const std::vector<int>& members : a.children())
        for (int c = 0; c < d.cols(); ++c)
          for (int v : members)
            CHECK(std::abs(d(v, c) - d(members.front(), c)) < 1e-12);
    }
  }
}

TEST_CASE("build_compressive_basis matches the prefix of the full basis exactly") {
  for (std::uint64_t seed = 50; seed < 62; ++seed) {
    CoarseChain chain = testing::random_chain(seed);
    std::vector<HaarBasis> bases = build_haar_bases(chain);
    for (int j = 0; j < chain.depth(); ++j) {
      CompressiveBasis direct = build_compressive_basis(chain, j);
      CompressiveBasis via_full = compressive_prefix(bases[static_cast<size_t>(j)],
                                                     chain.layer_size(j + 1));
      REQUIRE(direct.matrix.nnz() == via_full.matrix.nnz());
      const std::vector<Triplet>& a = direct.matrix.entries();
      const std::vector<Triplet>& b = via_full.matrix.entries();
      for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].row == b[i].row);
        CHECK(a[i].col == b[i].col);
        CHECK(a[i].value == b[i].value);
      }
    }
  }
}

TEST_CASE("relabeling vertices permutes basis rows") {
  // Distinct weights give distinct degrees, so orderings carry over under
  // the relabeling and the basis value at a vertex follows it around.
  Graph g = normalize_graph(
      6, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 4.0}, {3, 4, 8.0}, {4, 5, 16.0}, {0, 5, 32.0}});
  ClusterAssignment a;
  a.parent = {0, 0, 0, 1, 1, 1};
  a.child_counts = {3, 3};
  CoarseChain chain;
  chain.layers = {g, induce_coarse_graph(g, a)};
  chain.orderings = {canonical_order(g, a), degree_order(chain.layers[1])};
  chain.assignments = {a};
  std::vector<HaarBasis> bases = build_haar_bases(chain);

  std::vector<int> perm = {3, 5, 0, 2, 4, 1};  // new id of each old vertex
  std::vector<Edge> relabeled;
  for (const Edge& e : g.edges)
    relabeled.push_back({perm[static_cast<size_t>(e.u)], perm[static_cast<size_t>(e.v)], e.w});
  Graph g2 = normalize_graph(6, relabeled);
  ClusterAssignment a2;
  a2.parent.resize(6);
  for (int v = 0; v < 6; ++v)
    a2.parent[static_cast<size_t>(perm[static_cast<size_t>(v)])] =
        a.parent[static_cast<size_t>(v)];
  a2.child_counts = a.child_counts;
  CoarseChain chain2;
  chain2.layers = {g2, induce_coarse_graph(g2, a2)};
  chain2.orderings = {canonical_order(g2, a2), degree_order(chain2.layers[1])};
  chain2.assignments = {a2};
  std::vector<HaarBasis> bases2 = build_haar_bases(chain2);

  Eigen::MatrixXd d = bases[0].matrix.to_dense();
  Eigen::MatrixXd d2 = bases2[0].matrix.to_dense();
  for (int v = 0; v < 6; ++v)
    for (int c = 0; c < 6; ++c) CHECK(d2(perm[static_cast<size_t>(v)], c) == d(v, c));
}

TEST_CASE("column origins track the birth layer") {
  CoarseChain chain = testing::figure_chain();
  std::vector<HaarBasis> bases = build_haar_bases(chain);
  // Layer 0: columns 0..2 extend layer-1 columns; of those, column 0
  // descends from the top. Columns 3..7 are born at layer 0.
  CHECK(bases[0].origins[0].layer == 2);
  CHECK(bases[0].origins[1].layer == 1);
  CHECK(bases[0].origins[2].layer == 1);
  for (int c = 3; c < 8; ++c) {
    CHECK(bases[0].origins[static_cast<size_t>(c)].layer == 0);
    CHECK(bases[0].origins[static_cast<size_t>(c)].within >= 2);
  }
}

TEST_CASE("sparsity counts the fill fraction") {
  SparseMatrix id = SparseMatrix::from_triplets(4, 4, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}});
  CHECK(sparsity(id) == 0.25);
  CoarseChain chain = testing::figure_chain();
  std::vector<HaarBasis> bases = build_haar_bases(chain);
  double eps = sparsity(bases[0].matrix);
  CHECK(eps > 0.0);
  CHECK(eps <= 1.0);
  CHECK(eps == static_cast<double>(bases[0].matrix.nnz()) / 64.0);
}

TEST_SUITE_END();
