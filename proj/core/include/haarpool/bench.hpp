#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "haarpool/chain_builder.hpp"
#include "haarpool/graph.hpp"

namespace haarpool {

enum class PoolMethod { kFast, kDense };

PoolMethod parse_pool_method(const std::string& name);
std::string pool_method_name(PoolMethod m);

/// Scaling sweep over target edge counts. Each target E picks
/// n = round(sqrt(2 E / density)) so the realized graphs keep the same
/// density; `batch` unit-weight G(n, density) graphs are generated per
/// target and pooled back to back inside the timed region. Chain and
/// basis construction are excluded from the timing. Unless level_sizes
/// says otherwise, chains have the single coarse layer [1], the full
/// pooling stack in one step.
struct BenchConfig {
  std::vector<std::int64_t> edge_counts;
  double density = 0.1;
  int batch = 50;
  int repeats = 5;
  std::uint64_t seed = 0;
  PoolMethod method = PoolMethod::kFast;
  std::vector<int> level_sizes;  // empty = [1]
  int feature_dim = 8;
  ClusterMethod cluster_method = ClusterMethod::kDegreeGreedy;
};

/// One row of the sweep. mean_s/std_s summarize the repeated timings of
/// one whole batch; mults counts multiplies over the batch once (it is
/// deterministic); epsilon is the fill fraction of the pooling operator.
/// error is empty on success; failed sweeps keep their row with NaN
/// timings so the CSV stays aligned with the request.
struct BenchRecord {
  std::int64_t edges = 0;
  int nodes = 0;
  std::string method;
  double mean_s = 0.0;
  double std_s = 0.0;
  double epsilon = 0.0;
  std::uint64_t mults = 0;
  std::string error;
};

std::vector<BenchRecord> run_bench(const BenchConfig& cfg);

/// Erdos-Renyi G(n, p) with unit weights, sampled by geometric skips so
/// the cost is proportional to the number of edges drawn. Deterministic
/// given the seed.
Graph random_graph(int n, double p, std::uint64_t seed);

/// Least-squares fit of log(y) against log(x).
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

ScalingFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

/// Fit of a record set: time_fit regresses mean_s on nodes, mult_fit
/// regresses mults on nodes. Rows with errors are skipped; fewer than two
/// distinct node counts is an error.
struct BenchFit {
  ScalingFit time_fit;
  ScalingFit mult_fit;
};

BenchFit fit_scaling(const std::vector<BenchRecord>& records);

}  // namespace haarpool
