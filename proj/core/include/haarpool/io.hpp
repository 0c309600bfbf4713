#pragma once

#include <string>
#include <vector>

#include "haarpool/bench.hpp"
#include "haarpool/chain.hpp"
#include "haarpool/feature_matrix.hpp"
#include "haarpool/graph.hpp"
#include "haarpool/sparse_matrix.hpp"

namespace haarpool {

/// 17 significant digits, enough for exact double round-trips.
std::string format_double(double v);

std::string load_text_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

/// Graph TSV: a `N <num_nodes>` line followed by one `u	v	w` line per
/// edge. Reading normalizes (sorts, merges duplicates, drops self-loops),
/// so write-then-read is the identity on canonical graphs. Parse errors
/// carry 1-based line numbers.
std::string write_graph_tsv(const Graph& g);
Graph read_graph_tsv(const std::string& text);

/// Chain JSON with layers (sizes only), assignments and orderings. Layer
/// graphs deserialize edgeless; sizes, assignments and orderings are all
/// the transforms need. Malformed chains are rejected with the offending
/// layer named.
std::string write_chain_json(const CoarseChain& chain);
CoarseChain read_chain_json(const std::string& text);

/// Sparse triplet text: `SPARSE <rows> <cols> <nnz>` then one
/// `row	col	value` line per entry in canonical order.
std::string write_sparse_matrix(const SparseMatrix& m);
SparseMatrix read_sparse_matrix(const std::string& text);

/// Headerless CSV of feature rows. Rejects ragged rows and non-finite
/// values, naming the position.
std::string write_features_csv(const FeatureMatrix& x);
FeatureMatrix read_features_csv(const std::string& text);

/// Bench CSV with the fixed header edges,nodes,method,mean_s,std_s,epsilon,mults.
/// Failed sweeps keep their row with NaN timings.
std::string write_bench_csv(const std::vector<BenchRecord>& records);

/// Minimal SVG log-log line chart of a bench sweep (time and multiply
/// count against node count).
std::string write_bench_svg(const std::vector<BenchRecord>& records);

}  // namespace haarpool
