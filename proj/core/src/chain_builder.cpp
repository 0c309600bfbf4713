#include "haarpool/chain_builder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "haarpool/random.hpp"

namespace haarpool {

namespace {

std::vector<int> order_by_descending(const std::vector<double>& value) {
  std::vector<int> order(value.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    double va = value[static_cast<size_t>(a)];
    double vb = value[static_cast<size_t>(b)];
    return va != vb ? va > vb : a < b;
  });
  return order;
}

void check_cluster_count(const Graph& g, int k, const char* who) {
  if (g.num_nodes < 1) throw std::invalid_argument(std::string(who) + ": empty graph");
  if (k < 1 || k > g.num_nodes)
    throw std::invalid_argument(std::string(who) + ": cluster count " + std::to_string(k) +
                                " outside 1.." + std::to_string(g.num_nodes));
}

ClusterAssignment assignment_from_labels(const std::vector<int>& labels, int k) {
  ClusterAssignment a;
  a.parent = labels;
  a.child_counts.assign(static_cast<size_t>(k), 0);
  for (int p : labels) ++a.child_counts[static_cast<size_t>(p)];
  return a;
}

// Relabels clusters so ids follow first appearance over ascending vertex id.
void relabel_first_appearance(std::vector<int>& labels, int k) {
  std::vector<int> remap(static_cast<size_t>(k), -1);
  int next = 0;
  for (int& l : labels) {
    if (remap[static_cast<size_t>(l)] < 0) remap[static_cast<size_t>(l)] = next++;
    l = remap[static_cast<size_t>(l)];
  }
}

// ---------------------------------------------------------------------------
// k-means (seeded, deterministic): farthest-point init, ties toward the
// lowest index, empty clusters re-seeded with the point farthest from its
// center. Converges when assignments stabilize, capped at 300 rounds.

std::vector<int> kmeans(const Eigen::MatrixXd& pts, int k, std::uint64_t seed) {
  int n = static_cast<int>(pts.rows());
  std::mt19937_64 rng(mix_seed(seed, 0x6b6d65616e73ULL));
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<int> center_idx;
  center_idx.push_back(bounded_int(rng, n));
  std::vector<double> min_d2(static_cast<size_t>(n), kInf);
  while (static_cast<int>(center_idx.size()) < k) {
    int last = center_idx.back();
    for (int i = 0; i < n; ++i) {
      double d2 = (pts.row(i) - pts.row(last)).squaredNorm();
      min_d2[static_cast<size_t>(i)] = std::min(min_d2[static_cast<size_t>(i)], d2);
    }
    int far = 0;
    for (int i = 1; i < n; ++i)
      if (min_d2[static_cast<size_t>(i)] > min_d2[static_cast<size_t>(far)]) far = i;
    center_idx.push_back(far);
  }

  Eigen::MatrixXd centers(k, pts.cols());
  for (int c = 0; c < k; ++c) centers.row(c) = pts.row(center_idx[static_cast<size_t>(c)]);

  std::vector<int> assign(static_cast<size_t>(n), -1);
  for (int round = 0; round < 300; ++round) {
    std::vector<int> next(static_cast<size_t>(n), 0);
    std::vector<double> d2(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d2 = (pts.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        double d = (pts.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d2) {
          best_d2 = d;
          best = c;
        }
      }
      next[static_cast<size_t>(i)] = best;
      d2[static_cast<size_t>(i)] = best_d2;
    }
    std::vector<int> size(static_cast<size_t>(k), 0);
    for (int l : next) ++size[static_cast<size_t>(l)];
    for (int c = 0; c < k; ++c) {
      if (size[static_cast<size_t>(c)] > 0) continue;
      int pick = -1;
      for (int i = 0; i < n; ++i) {
        if (size[static_cast<size_t>(next[static_cast<size_t>(i)])] <= 1) continue;
        if (pick < 0 || d2[static_cast<size_t>(i)] > d2[static_cast<size_t>(pick)]) pick = i;
      }
      --size[static_cast<size_t>(next[static_cast<size_t>(pick)])];
      next[static_cast<size_t>(pick)] = c;
      ++size[static_cast<size_t>(c)];
      d2[static_cast<size_t>(pick)] = 0.0;
    }
    if (next == assign) break;
    assign = std::move(next);
    centers.setZero();
    for (int i = 0; i < n; ++i) centers.row(assign[static_cast<size_t>(i)]) += pts.row(i);
    for (int c = 0; c < k; ++c) centers.row(c) /= static_cast<double>(size[static_cast<size_t>(c)]);
  }
  return assign;
}

// ---------------------------------------------------------------------------
// Eigensolvers. The embedding uses the k eigenvectors of the symmetric
// normalized Laplacian with the smallest eigenvalues, computed densely on
// small subgraphs and with Lanczos (full reorthogonalization) on large
// ones. Lanczos runs on 2I - L, whose largest eigenpairs are the wanted
// ones and whose spectrum stays in [0, 2].

constexpr int kDenseEigThreshold = 512;
constexpr double kEigTol = 1e-9;

struct Subgraph {
  std::vector<std::vector<std::pair<int, double>>> adj;  // normalized weights
};

Subgraph normalized_subgraph(const Graph& g, const std::vector<int>& vertices,
                             const std::vector<double>& deg) {
  std::vector<int> local(static_cast<size_t>(g.num_nodes), -1);
  for (size_t i = 0; i < vertices.size(); ++i)
    local[static_cast<size_t>(vertices[i])] = static_cast<int>(i);
  Subgraph s;
  s.adj.resize(vertices.size());
  for (const Edge& e : g.edges) {
    int lu = local[static_cast<size_t>(e.u)];
    int lv = local[static_cast<size_t>(e.v)];
    if (lu < 0 || lv < 0) continue;
    double w = e.w / std::sqrt(deg[static_cast<size_t>(e.u)] * deg[static_cast<size_t>(e.v)]);
    s.adj[static_cast<size_t>(lu)].push_back({lv, w});
    s.adj[static_cast<size_t>(lv)].push_back({lu, w});
  }
  return s;
}

Eigen::MatrixXd dense_embedding(const Subgraph& s, int k) {
  int n = static_cast<int>(s.adj.size());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, w] : s.adj[static_cast<size_t>(i)]) lap(i, j) -= w;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  if (es.info() != Eigen::Success)
    throw EigensolverError("spectral_cluster: dense eigendecomposition did not converge", 30 * n);
  return es.eigenvectors().leftCols(k);
}

// One multiplication y = (2I - L) x = x + D^{-1/2} A D^{-1/2} x.
Eigen::VectorXd shifted_apply(const Subgraph& s, const Eigen::VectorXd& x) {
  Eigen::VectorXd y = x;
  for (int i = 0; i < static_cast<int>(s.adj.size()); ++i)
    for (const auto& [j, w] : s.adj[static_cast<size_t>(i)]) y[i] += w * x[j];
  return y;
}

Eigen::MatrixXd lanczos_embedding(const Subgraph& s, int k, std::uint64_t seed) {
  int n = static_cast<int>(s.adj.size());
  int m = std::min(n, std::max(2 * k + 20, 60));
  int max_m = std::min(n, std::max(8 * k, 480));
  int total_steps = 0;

  while (true) {
    std::mt19937_64 rng(mix_seed(seed, 0x6c616e637a6fULL));
    Eigen::MatrixXd v(n, m);
    Eigen::VectorXd alpha(m), beta(m);
    Eigen::VectorXd cur(n);
    for (int i = 0; i < n; ++i) cur[i] = normal_double(rng);
    cur.normalize();
    v.col(0) = cur;

    int steps = 0;
    for (int t = 0; t < m; ++t) {
      ++steps;
      Eigen::VectorXd w = shifted_apply(s, v.col(t));
      if (t > 0) w -= beta[t - 1] * v.col(t - 1);
      alpha[t] = v.col(t).dot(w);
      w -= alpha[t] * v.col(t);
      // Full reorthogonalization, run twice for numerical safety.
      for (int pass = 0; pass < 2; ++pass)
        w -= v.leftCols(t + 1) * (v.leftCols(t + 1).transpose() * w);
      beta[t] = w.norm();
      if (t + 1 >= m) break;
      if (beta[t] < 1e-12) {
        // Invariant subspace found; splice in a fresh direction.
        beta[t] = 0.0;
        for (int i = 0; i < n; ++i) w[i] = normal_double(rng);
        for (int pass = 0; pass < 2; ++pass)
          w -= v.leftCols(t + 1) * (v.leftCols(t + 1).transpose() * w);
        double norm = w.norm();
        if (norm < 1e-12) {
          m = t + 1;  // subgraph too small to supply new directions
          break;
        }
        v.col(t + 1) = w / norm;
      } else {
        v.col(t + 1) = w / beta[t];
      }
    }
    total_steps += steps;

    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int t = 0; t < m; ++t) {
      tri(t, t) = alpha[t];
      if (t + 1 < m) tri(t, t + 1) = tri(t + 1, t) = beta[t];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    if (es.info() != Eigen::Success)
      throw EigensolverError("spectral_cluster: tridiagonal eigendecomposition failed",
                             total_steps);

    // Largest Ritz pairs of the shifted operator; residual bound is
    // |beta_m| times the last component of the Ritz vector.
    bool converged = true;
    double tail = beta[m - 1];
    for (int i = 0; i < k; ++i) {
      double res = std::abs(tail * es.eigenvectors()(m - 1, m - 1 - i));
      if (res > 2.0 * kEigTol) converged = false;
    }
    if (converged) {
      Eigen::MatrixXd out(n, k);
      for (int i = 0; i < k; ++i) out.col(i) = v.leftCols(m) * es.eigenvectors().col(m - 1 - i);
      return out;
    }
    if (m >= max_m)
      throw EigensolverError("spectral_cluster: Lanczos did not converge after " +
                                 std::to_string(total_steps) + " iterations",
                             total_steps);
    m = std::min(max_m, 2 * m);
  }
}

Eigen::MatrixXd laplacian_embedding(const Graph& g, const std::vector<int>& vertices,
                                    const std::vector<double>& deg, int k, std::uint64_t seed) {
  Subgraph s = normalized_subgraph(g, vertices, deg);
  int n = static_cast<int>(s.adj.size());
  Eigen::MatrixXd emb =
      n < kDenseEigThreshold ? dense_embedding(s, k) : lanczos_embedding(s, k, seed);
  // Unit-length rows make the embedding insensitive to component scaling,
  // which is what keeps k disjoint components exactly separable.
  for (int i = 0; i < n; ++i) {
    double norm = emb.row(i).norm();
    if (norm > 1e-12) emb.row(i) /= norm;
  }
  return emb;
}

}  // namespace

ClusterMethod parse_cluster_method(const std::string& name) {
  if (name == "spectral") return ClusterMethod::kSpectral;
  if (name == "degree-greedy") return ClusterMethod::kDegreeGreedy;
  throw std::invalid_argument("unknown clustering method '" + name +
                              "' (expected spectral or degree-greedy)");
}

std::string cluster_method_name(ClusterMethod m) {
  return m == ClusterMethod::kSpectral ? "spectral" : "degree-greedy";
}

ClusterAssignment spectral_cluster(const Graph& g, int k, std::uint64_t seed) {
  check_cluster_count(g, k, "spectral_cluster");
  int n = g.num_nodes;
  std::vector<int> labels(static_cast<size_t>(n), -1);

  if (k == n) {
    std::iota(labels.begin(), labels.end(), 0);
    return assignment_from_labels(labels, k);
  }

  std::vector<double> deg = g.weighted_degrees();
  std::vector<int> connected, isolated;
  for (int v = 0; v < n; ++v) (deg[static_cast<size_t>(v)] > 0.0 ? connected : isolated).push_back(v);

  int placed_clusters = 0;
  if (!connected.empty()) {
    int kc = std::min<int>(k, static_cast<int>(connected.size()));
    if (kc == static_cast<int>(connected.size())) {
      for (size_t i = 0; i < connected.size(); ++i)
        labels[static_cast<size_t>(connected[i])] = static_cast<int>(i);
    } else if (kc == 1) {
      for (int v : connected) labels[static_cast<size_t>(v)] = 0;
    } else {
      Eigen::MatrixXd emb = laplacian_embedding(g, connected, deg, kc, seed);
      std::vector<int> raw = kmeans(emb, kc, seed);
      for (size_t i = 0; i < connected.size(); ++i)
        labels[static_cast<size_t>(connected[i])] = raw[i];
      // Canonicalize over ascending vertex id; labels of unassigned
      // (isolated) vertices stay -1 and are ignored here.
      std::vector<int> remap(static_cast<size_t>(kc), -1);
      int next = 0;
      for (int v = 0; v < n; ++v) {
        int& l = labels[static_cast<size_t>(v)];
        if (l < 0) continue;
        if (remap[static_cast<size_t>(l)] < 0) remap[static_cast<size_t>(l)] = next++;
        l = remap[static_cast<size_t>(l)];
      }
    }
    placed_clusters = kc;
  }

  // Isolated vertices: found fresh singleton clusters while fewer than k
  // exist, then join the smallest cluster (ties toward the lowest id).
  std::vector<int> late_joiners;
  for (int v : isolated) {
    if (placed_clusters < k)
      labels[static_cast<size_t>(v)] = placed_clusters++;
    else
      late_joiners.push_back(v);
  }
  std::vector<int> size(static_cast<size_t>(k), 0);
  for (int l : labels)
    if (l >= 0) ++size[static_cast<size_t>(l)];
  for (int v : late_joiners) {
    int best = 0;
    for (int c = 1; c < k; ++c)
      if (size[static_cast<size_t>(c)] < size[static_cast<size_t>(best)]) best = c;
    labels[static_cast<size_t>(v)] = best;
    ++size[static_cast<size_t>(best)];
  }
  return assignment_from_labels(labels, k);
}

ClusterAssignment degree_greedy_cluster(const Graph& g, int k, std::uint64_t /*seed*/) {
  check_cluster_count(g, k, "degree_greedy_cluster");
  std::vector<double> deg = g.weighted_degrees();
  std::vector<int> order = order_by_descending(deg);

  std::vector<int> seed_cluster(static_cast<size_t>(g.num_nodes), -1);
  for (int c = 0; c < k; ++c) seed_cluster[static_cast<size_t>(order[static_cast<size_t>(c)])] = c;

  // Edge weight from every vertex to each seed it touches.
  std::vector<std::map<int, double>> to_seed(static_cast<size_t>(g.num_nodes));
  for (const Edge& e : g.edges) {
    int cu = seed_cluster[static_cast<size_t>(e.u)];
    int cv = seed_cluster[static_cast<size_t>(e.v)];
    if (cv >= 0) to_seed[static_cast<size_t>(e.u)][cv] += e.w;
    if (cu >= 0) to_seed[static_cast<size_t>(e.v)][cu] += e.w;
  }

  std::vector<int> labels(static_cast<size_t>(g.num_nodes), -1);
  for (int v = 0; v < g.num_nodes; ++v) {
    if (seed_cluster[static_cast<size_t>(v)] >= 0) {
      labels[static_cast<size_t>(v)] = seed_cluster[static_cast<size_t>(v)];
      continue;
    }
    int best = 0;
    double best_w = 0.0;
    for (const auto& [c, w] : to_seed[static_cast<size_t>(v)])
      if (w > best_w) {
        best_w = w;
        best = c;
      }
    labels[static_cast<size_t>(v)] = best;
  }
  return assignment_from_labels(labels, k);
}

std::vector<int> degree_order(const Graph& g) { return order_by_descending(g.weighted_degrees()); }

std::vector<int> canonical_order(const Graph& g, const ClusterAssignment& a) {
  if (a.num_nodes() != g.num_nodes)
    throw std::invalid_argument("canonical_order: assignment does not cover the graph");
  Graph coarse = induce_coarse_graph(g, a);
  std::vector<int> cluster_order = order_by_descending(coarse.weighted_degrees());
  std::vector<double> deg = g.weighted_degrees();
  std::vector<std::vector<int>> kids = a.children();
  std::vector<int> out;
  out.reserve(static_cast<size_t>(g.num_nodes));
  for (int p : cluster_order) {
    std::vector<int>& members = kids[static_cast<size_t>(p)];
    std::sort(members.begin(), members.end(), [&](int x, int y) {
      double dx = deg[static_cast<size_t>(x)];
      double dy = deg[static_cast<size_t>(y)];
      return dx != dy ? dx > dy : x < y;
    });
    out.insert(out.end(), members.begin(), members.end());
  }
  return out;
}

namespace {

std::vector<int> derive_level_sizes(int n0, const ChainSpec& spec) {
  if (!spec.level_sizes.empty()) {
    if (spec.reduction_ratio)
      throw std::invalid_argument("build_chain: give either level sizes or a ratio, not both");
    int prev = n0;
    for (int s : spec.level_sizes) {
      if (s < 1 || s >= prev)
        throw std::invalid_argument("build_chain: level sizes must be strictly decreasing, "
                                    "starting below the graph size");
      prev = s;
    }
    return spec.level_sizes;
  }
  if (!spec.reduction_ratio)
    throw std::invalid_argument("build_chain: either level sizes or a ratio is required");
  double ratio = *spec.reduction_ratio;
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("build_chain: reduction ratio must lie in (0, 1)");
  if (spec.num_levels < 1)
    throw std::invalid_argument("build_chain: ratio chains need at least one level");
  if (n0 < 2)
    throw std::invalid_argument("build_chain: a single-vertex graph cannot be coarsened");
  std::vector<int> sizes;
  int cur = n0;
  for (int level = 0; level < spec.num_levels && cur > 1; ++level) {
    int next = std::max(1, static_cast<int>(std::ceil(static_cast<double>(cur) * ratio)));
    if (next >= cur) next = cur - 1;
    sizes.push_back(next);
    cur = next;
  }
  return sizes;
}

}  // namespace

CoarseChain build_chain(const Graph& g, const ChainSpec& spec) {
  if (g.num_nodes < 1) throw std::invalid_argument("build_chain: empty graph");
  std::vector<int> sizes = derive_level_sizes(g.num_nodes, spec);

  CoarseChain chain;
  chain.layers.push_back(g);
  for (size_t level = 0; level < sizes.size(); ++level) {
    const Graph& fine = chain.layers.back();
    int k = sizes[level];
    std::uint64_t level_seed = mix_seed(spec.seed, level);
    ClusterAssignment a = spec.method == ClusterMethod::kSpectral
                              ? spectral_cluster(fine, k, level_seed)
                              : degree_greedy_cluster(fine, k, level_seed);
    chain.orderings.push_back(canonical_order(fine, a));
    chain.layers.push_back(induce_coarse_graph(fine, a));
    chain.assignments.push_back(std::move(a));
  }
  chain.orderings.push_back(degree_order(chain.layers.back()));
  return chain;
}

}  // namespace haarpool
