#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "haarpool/chain.hpp"
#include "haarpool/chain_builder.hpp"
#include "haarpool/feature_matrix.hpp"
#include "haarpool/graph.hpp"
#include "haarpool/random.hpp"

namespace haarpool::testing {

/// Two triangle communities bridged to a pendant pair: clusters naturally
/// at sizes (3, 3, 2), giving the 8 -> 3 -> 1 chain used across the tests.
inline Graph figure_graph() {
  return normalize_graph(8, {{0, 1, 1.0},
                             {0, 2, 1.0},
                             {1, 2, 1.0},
                             {3, 4, 1.0},
                             {3, 5, 1.0},
                             {4, 5, 1.0},
                             {6, 7, 1.0},
                             {2, 3, 1.0},
                             {5, 6, 1.0}});
}

/// The 8 -> 3 -> 1 chain with the (3, 3, 2) layer-1 clusters, assembled
/// explicitly so tests do not depend on any clustering method.
inline CoarseChain figure_chain() {
  CoarseChain chain;
  Graph g0 = figure_graph();

  ClusterAssignment a0;
  a0.parent = {0, 0, 0, 1, 1, 1, 2, 2};
  a0.child_counts = {3, 3, 2};

  Graph g1 = induce_coarse_graph(g0, a0);
  ClusterAssignment a1;
  a1.parent = {0, 0, 0};
  a1.child_counts = {3};
  Graph g2 = induce_coarse_graph(g1, a1);

  chain.orderings.push_back(canonical_order(g0, a0));
  chain.orderings.push_back(canonical_order(g1, a1));
  chain.orderings.push_back(degree_order(g2));
  chain.layers = {g0, g1, g2};
  chain.assignments = {a0, a1};
  return chain;
}

/// G(n, p)-style random graph with uniformly drawn weights, plus a chance
/// of isolated vertices when p is small.
inline Graph random_test_graph(std::mt19937_64& rng, int n, double p) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (canonical_double(rng) < p)
        edges.push_back({u, v, 0.25 + canonical_double(rng)});
  return normalize_graph(n, edges);
}

/// Strictly decreasing random layer sizes for a chain over n vertices.
inline std::vector<int> random_level_sizes(std::mt19937_64& rng, int n, int levels) {
  std::vector<int> sizes;
  int cur = n;
  for (int l = 0; l < levels && cur > 1; ++l) {
    int next = 1 + bounded_int(rng, cur - 1);  // in [1, cur-1]
    sizes.push_back(next);
    cur = next;
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<int>());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

struct RandomChainOptions {
  int min_nodes = 4;
  int max_nodes = 64;
  int min_levels = 1;
  int max_levels = 3;
  double edge_prob = 0.3;
};

/// Random chain built through the public pipeline, alternating clustering
/// methods by seed parity.
inline CoarseChain random_chain(std::uint64_t seed, const RandomChainOptions& opt = {}) {
  std::mt19937_64 rng(mix_seed(seed, 0x746573745f6368ULL));
  int n = opt.min_nodes + bounded_int(rng, opt.max_nodes - opt.min_nodes + 1);
  Graph g = random_test_graph(rng, n, opt.edge_prob);
  ChainSpec spec;
  int levels = opt.min_levels + bounded_int(rng, opt.max_levels - opt.min_levels + 1);
  spec.level_sizes = random_level_sizes(rng, n, levels);
  if (spec.level_sizes.empty()) spec.level_sizes = {1};
  spec.method = seed % 2 == 0 ? ClusterMethod::kSpectral : ClusterMethod::kDegreeGreedy;
  spec.seed = mix_seed(seed, 0x636c7573ULL);
  return build_chain(g, spec);
}

inline FeatureMatrix random_features(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, 0x66656174ULL));
  Eigen::MatrixXd x(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) x(r, c) = normal_double(rng);
  return FeatureMatrix::from_matrix(std::move(x));
}

}  // namespace haarpool::testing
