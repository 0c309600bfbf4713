#include "haarpool/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <nlohmann/json.hpp>

#include "haarpool/fast_pool.hpp"
#include "haarpool/random.hpp"
#include "haarpool/transforms.hpp"

namespace haarpool {

namespace {

FeatureMatrix random_features(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd x(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) x(r, c) = normal_double(rng);
  return FeatureMatrix::from_matrix(std::move(x));
}

struct LayerWorst {
  double residual = 0.0;
  int layer = -1;

  void update(double r, int j) {
    if (r > residual || layer < 0) {
      residual = r;
      layer = j;
    }
  }
  std::string detail(const char* what) const {
    return std::string(what) + ", worst at layer " + std::to_string(layer);
  }
};

// Distinct stored values of a column, counting an implicit zero when the
// support does not cover every row. Values born identical compare equal.
int distinct_column_values(const SparseMatrix& m, int col) {
  std::vector<double> vals;
  for (const Triplet& t : m.column(col)) vals.push_back(t.value);
  if (static_cast<int>(vals.size()) < m.rows()) vals.push_back(0.0);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return static_cast<int>(vals.size());
}

}  // namespace

VerifyReport run_verify(const CoarseChain& chain, const std::vector<HaarBasis>& bases,
                        const FeatureMatrix* x0, const VerifyOptions& opts) {
  VerifyReport report;
  auto add = [&](const std::string& name, double residual, double tolerance,
                 const std::string& detail) {
    report.checks.push_back({name, residual <= tolerance, residual, tolerance, detail});
  };

  std::vector<std::string> violations = validate_chain(chain);
  add("chain-structure", static_cast<double>(violations.size()), 0.0,
      violations.empty() ? "chain is well-formed" : violations.front());

  int shape_defects = 0;
  std::string shape_detail = "one square basis per layer";
  if (static_cast<int>(bases.size()) != chain.num_layers()) {
    ++shape_defects;
    shape_detail = std::to_string(bases.size()) + " bases for " +
                   std::to_string(chain.num_layers()) + " layers";
  } else {
    for (int j = 0; j < chain.num_layers(); ++j) {
      const HaarBasis& b = bases[static_cast<size_t>(j)];
      if (b.layer != j || b.matrix.rows() != chain.layer_size(j) ||
          b.matrix.cols() != chain.layer_size(j)) {
        ++shape_defects;
        shape_detail = "basis at slot " + std::to_string(j) + " does not match layer " +
                       std::to_string(j);
      }
    }
  }
  add("basis-shape", static_cast<double>(shape_defects), 0.0, shape_detail);

  if (!violations.empty() || shape_defects > 0) {
    report.pass = false;
    return report;
  }

  int k = chain.depth();
  int d = std::max(1, opts.feature_dim);
  if (x0 && x0->rows() != chain.layer_size(0)) {
    add("features-shape", 1.0, 0.0,
        "supplied features have " + std::to_string(x0->rows()) + " rows, layer 0 has " +
            std::to_string(chain.layer_size(0)));
    report.pass = false;
    return report;
  }

  std::vector<FeatureMatrix> xs;
  for (int j = 0; j <= k; ++j) {
    if (j == 0 && x0)
      xs.push_back(*x0);
    else
      xs.push_back(random_features(chain.layer_size(j), d, mix_seed(opts.seed, j)));
  }

  LayerWorst ortho;
  for (int j = 0; j <= k; ++j)
    ortho.update(bases[static_cast<size_t>(j)].matrix.gram_identity_residual(), j);
  add("orthonormality", ortho.residual, tol::kOrthonormality, ortho.detail("max |B^T B - I|"));

  LayerWorst recon, parseval;
  for (int j = 0; j <= k; ++j) {
    const HaarBasis& b = bases[static_cast<size_t>(j)];
    const FeatureMatrix& x = xs[static_cast<size_t>(j)];
    CoefficientMatrix c = adjoint_transform(b, x);
    FeatureMatrix back = forward_transform(b, c);
    recon.update((back.matrix() - x.matrix()).cwiseAbs().maxCoeff(), j);
    double lhs = c.matrix().squaredNorm();
    double rhs = x.matrix().squaredNorm();
    double rel = rhs > 0.0 ? std::abs(lhs - rhs) / rhs : std::abs(lhs - rhs);
    parseval.update(rel, j);
  }
  add("reconstruction", recon.residual, tol::kReconstruction, recon.detail("max |B B^T x - x|"));
  add("parseval", parseval.residual, tol::kParsevalRel,
      parseval.detail("relative energy drift of B^T x"));

  LayerWorst norm_comp, norm_full, constance, fast_dense;
  int max_distinct = 0;
  WeightTree wt = compute_weights(chain);
  for (int j = 0; j < k; ++j) {
    const HaarBasis& b = bases[static_cast<size_t>(j)];
    const FeatureMatrix& x = xs[static_cast<size_t>(j)];
    PoolNormCheck nc = pool_norm_check(chain, b, j, x);
    norm_comp.update(std::abs(nc.compressive_lhs - nc.compressive_rhs), j);
    norm_full.update(std::abs(nc.full_lhs - nc.full_rhs), j);

    int n_next = chain.layer_size(j + 1);
    CompressiveBasis prefix = compressive_prefix(b, n_next);
    const ClusterAssignment& a = chain.assignments[static_cast<size_t>(j)];
    for (int col = 0; col < n_next; ++col) {
      std::vector<double> dense(static_cast<size_t>(chain.layer_size(j)), 0.0);
      for (const Triplet& t : prefix.matrix.column(col)) dense[static_cast<size_t>(t.row)] = t.value;
      for (const std::vector<int>& members : a.children()) {
        double lo = dense[static_cast<size_t>(members.front())];
        double hi = lo;
        for (int v : members) {
          lo = std::min(lo, dense[static_cast<size_t>(v)]);
          hi = std::max(hi, dense[static_cast<size_t>(v)]);
        }
        constance.update(hi - lo, j);
      }
    }
    for (int col = n_next; col < b.matrix.cols(); ++col)
      max_distinct = std::max(max_distinct, distinct_column_values(b.matrix, col));

    CoefficientMatrix dense_y = haar_pool(prefix, x);
    CoefficientMatrix fast_y = fast_haar_pool(chain, wt, bases, x, j);
    fast_dense.update((dense_y.matrix() - fast_y.matrix()).cwiseAbs().maxCoeff(), j);
  }
  add("pool-norm-compressive", norm_comp.residual, tol::kPoolNorm,
      norm_comp.detail("cluster-sum identity"));
  add("pool-norm-full", norm_full.residual, tol::kPoolNorm,
      norm_full.detail("energy conservation"));
  add("cluster-constance", constance.residual, tol::kClusterConstance,
      constance.detail("compressive columns within clusters"));
  add("column-locality", static_cast<double>(std::max(0, max_distinct - 3)), 0.0,
      "largest distinct-value count " + std::to_string(max_distinct));
  add("fast-dense-agreement", fast_dense.residual, tol::kFastDense,
      fast_dense.detail("max |fast - dense|"));

  if (opts.full_stack) {
    if (chain.layer_size(k) != 1) {
      add("full-stack-cascade", 1.0, 0.0,
          "full pooling stacks require the chain to end in a single vertex");
    } else {
      double worst = 0.0;
      FeatureMatrix cur = xs[0];
      for (int j = 0; j < k; ++j) {
        const HaarBasis& b = bases[static_cast<size_t>(j)];
        int n_next = chain.layer_size(j + 1);
        CoefficientMatrix pooled = haar_pool(compressive_prefix(b, n_next), cur);
        CoefficientMatrix full = adjoint_transform(b, cur);
        worst = std::max(worst, (pooled.matrix() - full.matrix().topRows(n_next))
                                    .cwiseAbs()
                                    .maxCoeff());
        cur = pooled;
      }
      std::string detail = "cascade output is " + std::to_string(cur.rows()) + "x" +
                           std::to_string(cur.cols());
      add("full-stack-cascade", worst, tol::kCascade, detail);
    }
  }

  report.pass = true;
  for (const VerifyCheck& c : report.checks) report.pass = report.pass && c.pass;
  return report;
}

std::string write_verify_json(const VerifyReport& report) {
  nlohmann::json j;
  j["pass"] = report.pass;
  j["checks"] = nlohmann::json::array();
  for (const VerifyCheck& c : report.checks)
    j["checks"].push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"residual", c.residual},
                           {"tolerance", c.tolerance},
                           {"detail", c.detail}});
  return j.dump(2) + "\n";
}

}  // namespace haarpool
