#include "haarpool/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "haarpool/fast_pool.hpp"
#include "haarpool/haar_basis.hpp"
#include "haarpool/random.hpp"
#include "haarpool/transforms.hpp"

namespace haarpool {

PoolMethod parse_pool_method(const std::string& name) {
  if (name == "fast") return PoolMethod::kFast;
  if (name == "dense") return PoolMethod::kDense;
  throw std::invalid_argument("unknown pooling method '" + name + "' (expected fast or dense)");
}

std::string pool_method_name(PoolMethod m) { return m == PoolMethod::kFast ? "fast" : "dense"; }

Graph random_graph(int n, double p, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_graph: graphs need at least one vertex");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("random_graph: edge probability outside [0, 1]");
  Graph g;
  g.num_nodes = n;
  if (n < 2 || p == 0.0) return g;

  auto row_offset = [n](std::int64_t i) {
    return i * static_cast<std::int64_t>(n) - i * (i + 1) / 2;
  };
  std::int64_t total = row_offset(n - 1);

  std::mt19937_64 rng(mix_seed(seed, 0x67726170685fULL));
  std::int64_t t = -1;
  double log_q = p < 1.0 ? std::log1p(-p) : 0.0;
  while (true) {
    if (p < 1.0) {
      double u = canonical_double(rng);
      t += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-u) / log_q));
    } else {
      t += 1;
    }
    if (t >= total) break;
    // Decode the linear pair index into (i, j), i < j.
    double disc = static_cast<double>(2 * n - 1) * static_cast<double>(2 * n - 1) -
                  8.0 * static_cast<double>(t);
    std::int64_t i = static_cast<std::int64_t>(
        (static_cast<double>(2 * n - 1) - std::sqrt(std::max(0.0, disc))) / 2.0);
    i = std::max<std::int64_t>(0, std::min<std::int64_t>(i, n - 2));
    while (i + 1 <= n - 2 && row_offset(i + 1) <= t) ++i;
    while (i > 0 && row_offset(i) > t) --i;
    std::int64_t j = i + 1 + (t - row_offset(i));
    g.edges.push_back({static_cast<int>(i), static_cast<int>(j), 1.0});
  }
  return g;
}

namespace {

struct PreparedInstance {
  CoarseChain chain;            // layer-0 edges dropped after setup
  std::vector<HaarBasis> bases; // slots j+1..K filled for the fast path
  WeightTree wt;
  CompressiveBasis prefix;
  FeatureMatrix features;
};

// Full bases for layers min_layer..K only; finer slots stay empty. Avoids
// materializing the wide layer-0 basis, which the fast path never reads.
std::vector<HaarBasis> bases_from(const CoarseChain& chain, int min_layer) {
  if (min_layer <= 0) return build_haar_bases(chain);
  int k = chain.depth();
  std::vector<HaarBasis> bases(static_cast<size_t>(k) + 1);
  CoarseChain upper;
  upper.layers.assign(chain.layers.begin() + min_layer, chain.layers.end());
  upper.assignments.assign(chain.assignments.begin() + min_layer, chain.assignments.end());
  upper.orderings.assign(chain.orderings.begin() + min_layer, chain.orderings.end());
  std::vector<HaarBasis> built = build_haar_bases(upper);
  for (size_t i = 0; i < built.size(); ++i) {
    built[i].layer += min_layer;
    for (ColumnOrigin& o : built[i].origins) o.layer += min_layer;
    bases[i + static_cast<size_t>(min_layer)] = std::move(built[i]);
  }
  return bases;
}

PreparedInstance prepare_instance(const BenchConfig& cfg, const std::vector<int>& level_sizes,
                                  int n, std::uint64_t seed) {
  PreparedInstance inst;
  Graph g = random_graph(n, cfg.density, seed);
  ChainSpec spec;
  spec.level_sizes = level_sizes;
  spec.method = cfg.cluster_method;
  spec.seed = mix_seed(seed, 0x636861696eULL);
  inst.chain = build_chain(g, spec);
  inst.chain.layers[0].edges.clear();  // pooling only needs sizes + assignments
  inst.prefix = build_compressive_basis(inst.chain, 0);
  if (cfg.method == PoolMethod::kFast) {
    inst.bases = bases_from(inst.chain, 1);
    inst.wt = compute_weights(inst.chain);
  }
  std::mt19937_64 rng(mix_seed(seed, 0x66656174ULL));
  Eigen::MatrixXd x(n, cfg.feature_dim);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < cfg.feature_dim; ++c) x(r, c) = normal_double(rng);
  inst.features = FeatureMatrix::from_matrix(std::move(x));
  return inst;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  if (cfg.edge_counts.empty()) throw std::invalid_argument("run_bench: no edge counts");
  for (std::int64_t e : cfg.edge_counts)
    if (e < 1) throw std::invalid_argument("run_bench: edge counts must be positive");
  if (!(cfg.density > 0.0 && cfg.density <= 1.0))
    throw std::invalid_argument("run_bench: density outside (0, 1]");
  if (cfg.batch < 1) throw std::invalid_argument("run_bench: batch must be >= 1");
  if (cfg.repeats < 1) throw std::invalid_argument("run_bench: repeats must be >= 1");
  if (cfg.feature_dim < 1) throw std::invalid_argument("run_bench: feature dim must be >= 1");
  std::vector<int> level_sizes = cfg.level_sizes.empty() ? std::vector<int>{1} : cfg.level_sizes;

  std::vector<BenchRecord> records;
  double sink = 0.0;
  for (size_t idx = 0; idx < cfg.edge_counts.size(); ++idx) {
    std::int64_t target_edges = cfg.edge_counts[idx];
    int n = std::max<int>(
        2, static_cast<int>(std::llround(std::sqrt(2.0 * static_cast<double>(target_edges) /
                                                   cfg.density))));
    BenchRecord rec;
    rec.edges = target_edges;
    rec.nodes = n;
    rec.method = pool_method_name(cfg.method);
    try {
      std::vector<PreparedInstance> batch;
      batch.reserve(static_cast<size_t>(cfg.batch));
      double eps_sum = 0.0;
      for (int b = 0; b < cfg.batch; ++b) {
        std::uint64_t inst_seed = mix_seed(cfg.seed, (idx << 20) + static_cast<size_t>(b));
        batch.push_back(prepare_instance(cfg, level_sizes, n, inst_seed));
        eps_sum += sparsity(batch.back().prefix.matrix);
      }
      rec.epsilon = eps_sum / static_cast<double>(cfg.batch);

      for (PreparedInstance& inst : batch) {
        std::uint64_t m = 0;
        if (cfg.method == PoolMethod::kFast)
          fast_haar_pool(inst.chain, inst.wt, inst.bases, inst.features, 0, &m);
        else
          haar_pool(inst.prefix, inst.features, &m);
        rec.mults += m;
      }

      std::vector<double> times;
      times.reserve(static_cast<size_t>(cfg.repeats));
      for (int rep = 0; rep < cfg.repeats; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        for (PreparedInstance& inst : batch) {
          CoefficientMatrix y =
              cfg.method == PoolMethod::kFast
                  ? fast_haar_pool(inst.chain, inst.wt, inst.bases, inst.features, 0)
                  : haar_pool(inst.prefix, inst.features);
          sink += y.matrix()(0, 0);
        }
        auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      double mean = 0.0;
      for (double t : times) mean += t;
      mean /= static_cast<double>(times.size());
      double var = 0.0;
      for (double t : times) var += (t - mean) * (t - mean);
      rec.mean_s = mean;
      rec.std_s = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1)) : 0.0;
    } catch (const std::exception& e) {
      rec.error = e.what();
      rec.mean_s = rec.std_s = std::numeric_limits<double>::quiet_NaN();
      std::fprintf(stderr, "bench: target %lld edges failed: %s\n",
                   static_cast<long long>(target_edges), e.what());
    }
    records.push_back(std::move(rec));
  }
  (void)sink;
  return records;
}

ScalingFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_loglog: size mismatch");
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i])) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 2) throw std::invalid_argument("fit_loglog: need at least two positive points");
  bool distinct = false;
  for (double v : lx)
    if (v != lx.front()) distinct = true;
  if (!distinct) throw std::invalid_argument("fit_loglog: all x values coincide");

  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // Spread at the rounding noise of the log transform is a constant
  // series; 1 - ss_res/syy would be 0/0 shaped there.
  double eps = std::numeric_limits<double>::epsilon();
  double noise_floor =
      16.0 * static_cast<double>(lx.size()) * eps * eps * std::max(1.0, my * my);
  if (syy <= noise_floor) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
      double pred = fit.intercept + fit.slope * lx[i];
      ss_res += (ly[i] - pred) * (ly[i] - pred);
    }
    fit.r_squared = 1.0 - ss_res / syy;
  }
  return fit;
}

BenchFit fit_scaling(const std::vector<BenchRecord>& records) {
  std::vector<double> nodes, times, mults;
  for (const BenchRecord& r : records) {
    if (!r.error.empty()) continue;
    nodes.push_back(static_cast<double>(r.nodes));
    times.push_back(r.mean_s);
    mults.push_back(static_cast<double>(r.mults));
  }
  BenchFit fit;
  fit.time_fit = fit_loglog(nodes, times);
  fit.mult_fit = fit_loglog(nodes, mults);
  return fit;
}

}  // namespace haarpool
