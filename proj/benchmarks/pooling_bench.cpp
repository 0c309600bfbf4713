// Microbenchmarks for the pooling kernels. The `bench` CLI subcommand is
// the scaling study; these isolate single-kernel costs per graph size.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "haarpool/bench.hpp"
#include "haarpool/chain_builder.hpp"
#include "haarpool/fast_pool.hpp"
#include "haarpool/haar_basis.hpp"
#include "haarpool/random.hpp"
#include "haarpool/transforms.hpp"

namespace {

using namespace haarpool;

constexpr double kDensity = 0.1;
constexpr int kFeatureDim = 8;

struct Instance {
  CoarseChain chain;
  std::vector<HaarBasis> bases;
  WeightTree wt;
  CompressiveBasis prefix;
  FeatureMatrix features;
};

Instance make_instance(int n) {
  Instance inst;
  Graph g = random_graph(n, kDensity, 17);
  ChainSpec spec;
  spec.level_sizes = {1};
  spec.method = ClusterMethod::kDegreeGreedy;
  spec.seed = 23;
  inst.chain = build_chain(g, spec);
  inst.bases = build_haar_bases(inst.chain);
  inst.wt = compute_weights(inst.chain);
  inst.prefix = build_compressive_basis(inst.chain, 0);

  std::mt19937_64 rng(mix_seed(29, 0x66656174ULL));
  Eigen::MatrixXd x(n, kFeatureDim);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < kFeatureDim; ++c) x(r, c) = normal_double(rng);
  inst.features = FeatureMatrix::from_matrix(std::move(x));
  return inst;
}

void BM_DensePool(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CoefficientMatrix y = haar_pool(inst.prefix, inst.features);
    benchmark::DoNotOptimize(y.matrix().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DensePool)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_FastPool(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CoefficientMatrix y = fast_haar_pool(inst.chain, inst.wt, inst.bases, inst.features, 0);
    benchmark::DoNotOptimize(y.matrix().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FastPool)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_AdjointTransform(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CoefficientMatrix c = adjoint_transform(inst.bases[0], inst.features);
    benchmark::DoNotOptimize(c.matrix().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AdjointTransform)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

void BM_BuildBases(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    std::vector<HaarBasis> bases = build_haar_bases(inst.chain);
    benchmark::DoNotOptimize(bases.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildBases)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

void BM_BuildCompressiveBasis(benchmark::State& state) {
  Instance inst = make_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CompressiveBasis p = build_compressive_basis(inst.chain, 0);
    benchmark::DoNotOptimize(p.matrix.rows());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildCompressiveBasis)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_BuildChain(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Graph g = random_graph(n, kDensity, 17);
  ChainSpec spec;
  spec.level_sizes = {std::max(1, n / 4), std::max(1, n / 16), 1};
  spec.method = ClusterMethod::kDegreeGreedy;
  spec.seed = 23;
  for (auto _ : state) {
    CoarseChain chain = build_chain(g, spec);
    benchmark::DoNotOptimize(chain.layers.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BuildChain)->RangeMultiplier(4)->Range(64, 1024)->Complexity();

}  // namespace

BENCHMARK_MAIN();
