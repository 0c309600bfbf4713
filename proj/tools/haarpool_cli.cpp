#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "haarpool/bench.hpp"
#include "haarpool/chain_builder.hpp"
#include "haarpool/fast_pool.hpp"
#include "haarpool/haar_basis.hpp"
#include "haarpool/io.hpp"
#include "haarpool/transforms.hpp"
#include "haarpool/verify.hpp"

namespace {

int log_level() {
  // quiet=0 error=1 warn=2 info=3 debug=4; warnings on by default.
  const char* env = std::getenv("HAARPOOL_LOG_LEVEL");
  if (!env) return 2;
  std::string v(env);
  if (v == "quiet") return 0;
  if (v == "error") return 1;
  if (v == "warn") return 2;
  if (v == "info") return 3;
  if (v == "debug") return 4;
  return 2;
}

void log_info(const std::string& msg) {
  if (log_level() >= 3) std::fprintf(stderr, "haarpool: %s\n", msg.c_str());
}

std::string basis_path(const std::string& dir, int layer) {
  std::string d = dir;
  if (!d.empty() && d.back() != '/') d += '/';
  return d + "basis_layer_" + std::to_string(layer) + ".txt";
}

haarpool::HaarBasis load_basis(const std::string& dir, int layer) {
  haarpool::HaarBasis b;
  b.layer = layer;
  b.matrix = haarpool::read_sparse_matrix(haarpool::load_text_file(basis_path(dir, layer)));
  return b;
}

struct BuildChainArgs {
  std::string graph_path;
  std::string out_path;
  std::vector<int> levels;
  double ratio = 0.0;
  int depth = 0;
  std::string method = "spectral";
  std::uint64_t seed = 0;
};

int run_build_chain(const BuildChainArgs& a) {
  haarpool::Graph g = haarpool::read_graph_tsv(haarpool::load_text_file(a.graph_path));
  haarpool::ChainSpec spec;
  spec.level_sizes = a.levels;
  if (a.ratio > 0.0) {
    spec.reduction_ratio = a.ratio;
    spec.num_levels = a.depth;
  }
  spec.method = haarpool::parse_cluster_method(a.method);
  spec.seed = a.seed;
  haarpool::CoarseChain chain = haarpool::build_chain(g, spec);
  haarpool::save_text_file(a.out_path, haarpool::write_chain_json(chain));
  log_info("chain with " + std::to_string(chain.num_layers()) + " layers written to " +
           a.out_path);
  return 0;
}

int run_build_basis(const std::string& chain_path, const std::string& out_dir) {
  haarpool::CoarseChain chain =
      haarpool::read_chain_json(haarpool::load_text_file(chain_path));
  std::vector<haarpool::HaarBasis> bases = haarpool::build_haar_bases(chain);
  for (const haarpool::HaarBasis& b : bases) {
    haarpool::save_text_file(basis_path(out_dir, b.layer),
                             haarpool::write_sparse_matrix(b.matrix));
    log_info("layer " + std::to_string(b.layer) + " basis: " + std::to_string(b.matrix.nnz()) +
             " entries");
  }
  return 0;
}

struct PoolArgs {
  std::string chain_path;
  std::string bases_dir;
  std::string features_path;
  std::string out_path;
  int layer = 0;
  bool fast = false;
};

int run_pool(const PoolArgs& a) {
  haarpool::CoarseChain chain =
      haarpool::read_chain_json(haarpool::load_text_file(a.chain_path));
  if (a.layer >= chain.depth())
    throw std::invalid_argument("pool: layer " + std::to_string(a.layer) +
                                " has no coarser layer (chain depth " +
                                std::to_string(chain.depth()) + ")");
  haarpool::FeatureMatrix x =
      haarpool::read_features_csv(haarpool::load_text_file(a.features_path));
  haarpool::CoefficientMatrix y;
  if (a.fast) {
    std::vector<haarpool::HaarBasis> bases(static_cast<size_t>(chain.num_layers()));
    for (int i = a.layer + 1; i <= chain.depth(); ++i)
      bases[static_cast<size_t>(i)] = load_basis(a.bases_dir, i);
    haarpool::WeightTree wt = haarpool::compute_weights(chain);
    y = haarpool::fast_haar_pool(chain, wt, bases, x, a.layer);
  } else {
    haarpool::HaarBasis b = load_basis(a.bases_dir, a.layer);
    haarpool::CompressiveBasis prefix =
        haarpool::compressive_prefix(b, chain.layer_size(a.layer + 1));
    y = haarpool::haar_pool(prefix, x);
  }
  haarpool::save_text_file(a.out_path, haarpool::write_features_csv(y));
  log_info("pooled " + std::to_string(x.rows()) + " rows to " + std::to_string(y.rows()));
  return 0;
}

struct VerifyArgs {
  std::string chain_path;
  std::string bases_dir;
  std::string features_path;
  std::string report_path;
  std::uint64_t seed = 7;
  bool full_stack = false;
};

int run_verify_cmd(const VerifyArgs& a) {
  haarpool::CoarseChain chain =
      haarpool::read_chain_json(haarpool::load_text_file(a.chain_path));
  std::vector<haarpool::HaarBasis> bases;
  for (int j = 0; j < chain.num_layers(); ++j) bases.push_back(load_basis(a.bases_dir, j));
  haarpool::FeatureMatrix features;
  const haarpool::FeatureMatrix* x0 = nullptr;
  if (!a.features_path.empty()) {
    features = haarpool::read_features_csv(haarpool::load_text_file(a.features_path));
    x0 = &features;
  }
  haarpool::VerifyOptions opts;
  opts.seed = a.seed;
  opts.full_stack = a.full_stack;
  haarpool::VerifyReport report = haarpool::run_verify(chain, bases, x0, opts);
  if (!a.report_path.empty())
    haarpool::save_text_file(a.report_path, haarpool::write_verify_json(report));
  for (const haarpool::VerifyCheck& c : report.checks)
    std::printf("%s %s (residual %.3g, tolerance %.3g)\n", c.pass ? "ok  " : "FAIL",
                c.name.c_str(), c.residual, c.tolerance);
  std::printf("%s\n", report.pass ? "all checks passed" : "verification failed");
  return report.pass ? 0 : 1;
}

struct BenchArgs {
  std::vector<std::int64_t> edges;
  double density = 0.1;
  int batch = 50;
  int repeats = 5;
  std::uint64_t seed = 7;
  std::string method = "fast";
  std::string cluster = "degree-greedy";
  std::vector<int> levels;
  int dim = 8;
  std::string out_path;
  std::string plot_path;
};

int run_bench_cmd(const BenchArgs& a) {
  haarpool::BenchConfig cfg;
  cfg.edge_counts = a.edges;
  cfg.density = a.density;
  cfg.batch = a.batch;
  cfg.repeats = a.repeats;
  cfg.seed = a.seed;
  cfg.method = haarpool::parse_pool_method(a.method);
  cfg.cluster_method = haarpool::parse_cluster_method(a.cluster);
  cfg.level_sizes = a.levels;
  cfg.feature_dim = a.dim;
  std::vector<haarpool::BenchRecord> records = haarpool::run_bench(cfg);
  haarpool::save_text_file(a.out_path, haarpool::write_bench_csv(records));
  if (!a.plot_path.empty())
    haarpool::save_text_file(a.plot_path, haarpool::write_bench_svg(records));
  try {
    haarpool::BenchFit fit = haarpool::fit_scaling(records);
    std::printf("time slope %.3f (R^2 %.4f), multiply slope %.3f (R^2 %.4f)\n",
                fit.time_fit.slope, fit.time_fit.r_squared, fit.mult_fit.slope,
                fit.mult_fit.r_squared);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "haarpool: scaling fit skipped: %s\n", e.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haar-basis graph pooling toolkit"};
  app.require_subcommand(1);

  BuildChainArgs bc;
  CLI::App* cmd_chain = app.add_subcommand("build-chain", "Cluster a graph into a coarse chain");
  cmd_chain->add_option("--graph", bc.graph_path, "Graph TSV")->required();
  cmd_chain->add_option("--out", bc.out_path, "Chain JSON output")->required();
  CLI::Option* opt_levels =
      cmd_chain->add_option("--levels", bc.levels, "Comma-separated layer sizes")
          ->delimiter(',');
  CLI::Option* opt_ratio =
      cmd_chain->add_option("--ratio", bc.ratio, "Per-level reduction ratio in (0,1)");
  cmd_chain->add_option("--depth", bc.depth, "Levels to derive from --ratio");
  cmd_chain->add_option("--method", bc.method, "spectral or degree-greedy")
      ->check(CLI::IsMember({"spectral", "degree-greedy"}));
  cmd_chain->add_option("--seed", bc.seed, "Clustering seed");
  opt_levels->excludes(opt_ratio);

  std::string bb_chain, bb_out_dir;
  CLI::App* cmd_basis = app.add_subcommand("build-basis", "Construct the layer bases");
  cmd_basis->add_option("--chain", bb_chain, "Chain JSON")->required();
  cmd_basis->add_option("--out-dir", bb_out_dir, "Directory for basis files")->required();

  PoolArgs pa;
  CLI::App* cmd_pool = app.add_subcommand("pool", "Pool features one layer up");
  cmd_pool->add_option("--chain", pa.chain_path, "Chain JSON")->required();
  cmd_pool->add_option("--bases", pa.bases_dir, "Directory with basis files")->required();
  cmd_pool->add_option("--features", pa.features_path, "Feature CSV")->required();
  cmd_pool->add_option("--out", pa.out_path, "Pooled CSV output")->required();
  cmd_pool->add_option("--layer", pa.layer, "Layer to pool from")
      ->check(CLI::NonNegativeNumber);
  cmd_pool->add_flag("--fast", pa.fast, "Use the weighted-sum pooling path");

  VerifyArgs va;
  CLI::App* cmd_verify = app.add_subcommand("verify", "Check a chain and its bases");
  cmd_verify->add_option("--chain", va.chain_path, "Chain JSON")->required();
  cmd_verify->add_option("--bases", va.bases_dir, "Directory with basis files")->required();
  cmd_verify->add_option("--features", va.features_path, "Optional layer-0 features CSV");
  cmd_verify->add_option("--report", va.report_path, "Verification report JSON output");
  cmd_verify->add_option("--seed", va.seed, "Seed for the random probes");
  cmd_verify->add_flag("--full-stack", va.full_stack, "Also cascade down to a single vertex");

  BenchArgs ba;
  CLI::App* cmd_bench = app.add_subcommand("bench", "Scaling sweep of the pooling kernels");
  cmd_bench->add_option("--edges", ba.edges, "Comma-separated target edge counts")
      ->delimiter(',')
      ->required();
  cmd_bench->add_option("--out", ba.out_path, "Bench CSV output")->required();
  cmd_bench->add_option("--density", ba.density, "Graph density in (0,1]");
  cmd_bench->add_option("--batch", ba.batch, "Graphs per edge target");
  cmd_bench->add_option("--repeats", ba.repeats, "Timing repetitions");
  cmd_bench->add_option("--seed", ba.seed, "Sweep seed");
  cmd_bench->add_option("--method", ba.method, "fast or dense")
      ->check(CLI::IsMember({"fast", "dense"}));
  cmd_bench->add_option("--cluster", ba.cluster, "Clustering method for the chains")
      ->check(CLI::IsMember({"spectral", "degree-greedy"}));
  cmd_bench->add_option("--levels", ba.levels, "Chain layer sizes (default 1)")->delimiter(',');
  cmd_bench->add_option("--dim", ba.dim, "Feature channels")->check(CLI::PositiveNumber);
  cmd_bench->add_option("--plot", ba.plot_path, "Optional SVG chart output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_chain->parsed()) {
      if (bc.levels.empty() && bc.ratio == 0.0)
        throw CLI::ValidationError("build-chain", "either --levels or --ratio is required");
      return run_build_chain(bc);
    }
    if (cmd_basis->parsed()) return run_build_basis(bb_chain, bb_out_dir);
    if (cmd_pool->parsed()) return run_pool(pa);
    if (cmd_verify->parsed()) return run_verify_cmd(va);
    if (cmd_bench->parsed()) return run_bench_cmd(ba);
  } catch (const CLI::Error& e) {
    std::fprintf(stderr, "haarpool: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "haarpool: %s\n", e.what());
    return 1;
  }
  return 0;
}
