#include "haarpool/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace haarpool {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_on(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& token, const std::string& where) {
  const char* begin = token.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::invalid_argument(where + ": '" + token + "' is not a number");
  return v;
}

long parse_long(const std::string& token, const std::string& where) {
  const char* begin = token.c_str();
  char* end = nullptr;
  long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw std::invalid_argument(where + ": '" + token + "' is not an integer");
  return v;
}

std::string line_tag(const std::string& what, size_t line) {
  return what + ", line " + std::to_string(line + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string load_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

std::string write_graph_tsv(const Graph& g) {
  std::string out = "N " + std::to_string(g.num_nodes) + "\n";
  for (const Edge& e : g.edges)
    out += std::to_string(e.u) + "\t" + std::to_string(e.v) + "\t" + format_double(e.w) + "\n";
  return out;
}

Graph read_graph_tsv(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) throw std::invalid_argument("graph TSV: empty input");
  std::vector<std::string> head = split_on(lines[0], ' ');
  if (head.size() != 2 || head[0] != "N")
    throw std::invalid_argument(line_tag("graph TSV: expected 'N <num_nodes>'", 0));
  long n = parse_long(head[1], line_tag("graph TSV", 0));
  if (n < 0) throw std::invalid_argument("graph TSV: negative vertex count");

  std::vector<Edge> edges;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> f = split_on(lines[i], '\t');
    if (f.size() != 3)
      throw std::invalid_argument(line_tag("graph TSV: expected 'u\tv\tw'", i));
    Edge e;
    e.u = static_cast<int>(parse_long(f[0], line_tag("graph TSV", i)));
    e.v = static_cast<int>(parse_long(f[1], line_tag("graph TSV", i)));
    e.w = parse_double(f[2], line_tag("graph TSV", i));
    edges.push_back(e);
  }
  try {
    return normalize_graph(static_cast<int>(n), edges);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("graph TSV: ") + e.what());
  }
}

std::string write_chain_json(const CoarseChain& chain) {
  nlohmann::json j;
  j["layers"] = nlohmann::json::array();
  for (const Graph& layer : chain.layers) j["layers"].push_back({{"num_nodes", layer.num_nodes}});
  j["assignments"] = nlohmann::json::array();
  for (const ClusterAssignment& a : chain.assignments) j["assignments"].push_back(a.parent);
  j["orderings"] = chain.orderings;
  return j.dump() + "\n";
}

CoarseChain read_chain_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("chain JSON: ") + e.what());
  }
  if (!j.contains("layers") || !j["layers"].is_array() || j["layers"].empty())
    throw std::invalid_argument("chain JSON: missing or empty 'layers'");
  if (!j.contains("assignments") || !j["assignments"].is_array())
    throw std::invalid_argument("chain JSON: missing 'assignments'");
  if (!j.contains("orderings") || !j["orderings"].is_array())
    throw std::invalid_argument("chain JSON: missing 'orderings'");

  CoarseChain chain;
  for (const auto& layer : j["layers"]) {
    if (!layer.contains("num_nodes") || !layer["num_nodes"].is_number_integer())
      throw std::invalid_argument("chain JSON: layer " + std::to_string(chain.layers.size()) +
                                  " lacks an integer 'num_nodes'");
    Graph g;
    g.num_nodes = layer["num_nodes"].get<int>();
    chain.layers.push_back(std::move(g));
  }
  size_t expected_assign = chain.layers.size() - 1;
  if (j["assignments"].size() != expected_assign)
    throw std::invalid_argument("chain JSON: " + std::to_string(j["assignments"].size()) +
                                " assignments for " + std::to_string(chain.layers.size()) +
                                " layers (expected " + std::to_string(expected_assign) + ")");
  for (size_t l = 0; l < expected_assign; ++l) {
    const auto& arr = j["assignments"][l];
    if (!arr.is_array() || arr.size() != static_cast<size_t>(chain.layers[l].num_nodes))
      throw std::invalid_argument("chain JSON: assignment at layer " + std::to_string(l) +
                                  " does not cover the layer");
    ClusterAssignment a;
    int coarse = chain.layers[l + 1].num_nodes;
    a.child_counts.assign(static_cast<size_t>(coarse), 0);
    for (const auto& entry : arr) {
      if (!entry.is_number_integer())
        throw std::invalid_argument("chain JSON: non-integer parent at layer " +
                                    std::to_string(l));
      int p = entry.get<int>();
      if (p < 0 || p >= coarse)
        throw std::invalid_argument("chain JSON: parent id " + std::to_string(p) +
                                    " out of range at layer " + std::to_string(l));
      a.parent.push_back(p);
      ++a.child_counts[static_cast<size_t>(p)];
    }
    chain.assignments.push_back(std::move(a));
  }
  if (j["orderings"].size() != chain.layers.size())
    throw std::invalid_argument("chain JSON: " + std::to_string(j["orderings"].size()) +
                                " orderings for " + std::to_string(chain.layers.size()) +
                                " layers");
  for (size_t l = 0; l < chain.layers.size(); ++l) {
    const auto& arr = j["orderings"][l];
    if (!arr.is_array())
      throw std::invalid_argument("chain JSON: ordering at layer " + std::to_string(l) +
                                  " is not an array");
    std::vector<int> ord;
    for (const auto& entry : arr) {
      if (!entry.is_number_integer())
        throw std::invalid_argument("chain JSON: non-integer ordering entry at layer " +
                                    std::to_string(l));
      ord.push_back(entry.get<int>());
    }
    chain.orderings.push_back(std::move(ord));
  }
  std::vector<std::string> violations = validate_chain(chain);
  if (!violations.empty()) throw std::invalid_argument("chain JSON: " + violations.front());
  return chain;
}

std::string write_sparse_matrix(const SparseMatrix& m) {
  std::string out = "SPARSE " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " +
                    std::to_string(m.nnz()) + "\n";
  for (const Triplet& t : m.entries())
    out += std::to_string(t.row) + "\t" + std::to_string(t.col) + "\t" + format_double(t.value) +
           "\n";
  return out;
}

SparseMatrix read_sparse_matrix(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) throw std::invalid_argument("sparse matrix: empty input");
  std::vector<std::string> head = split_on(lines[0], ' ');
  if (head.size() != 4 || head[0] != "SPARSE")
    throw std::invalid_argument("sparse matrix: expected 'SPARSE <rows> <cols> <nnz>' header");
  long rows = parse_long(head[1], "sparse matrix header");
  long cols = parse_long(head[2], "sparse matrix header");
  long nnz = parse_long(head[3], "sparse matrix header");

  std::vector<Triplet> ts;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> f = split_on(lines[i], '\t');
    if (f.size() != 3)
      throw std::invalid_argument(line_tag("sparse matrix: expected 'row\tcol\tvalue'", i));
    Triplet t;
    t.row = static_cast<int>(parse_long(f[0], line_tag("sparse matrix", i)));
    t.col = static_cast<int>(parse_long(f[1], line_tag("sparse matrix", i)));
    t.value = parse_double(f[2], line_tag("sparse matrix", i));
    ts.push_back(t);
  }
  if (static_cast<long>(ts.size()) != nnz)
    throw std::invalid_argument("sparse matrix: header declares " + std::to_string(nnz) +
                                " entries, found " + std::to_string(ts.size()));
  try {
    return SparseMatrix::from_triplets(static_cast<int>(rows), static_cast<int>(cols),
                                       std::move(ts));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("sparse matrix: ") + e.what());
  }
}

std::string write_features_csv(const FeatureMatrix& x) {
  std::string out;
  for (int r = 0; r < x.rows(); ++r) {
    for (int c = 0; c < x.cols(); ++c) {
      if (c) out += ",";
      out += format_double(x.matrix()(r, c));
    }
    out += "\n";
  }
  return out;
}

FeatureMatrix read_features_csv(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> f = split_on(lines[i], ',');
    std::vector<double> row;
    for (size_t c = 0; c < f.size(); ++c) {
      double v = parse_double(f[c], "features CSV, row " + std::to_string(rows.size()) +
                                        ", col " + std::to_string(c));
      if (!std::isfinite(v))
        throw std::invalid_argument("features CSV: non-finite value at row " +
                                    std::to_string(rows.size()) + ", col " + std::to_string(c));
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("features CSV: row " + std::to_string(rows.size()) + " has " +
                                  std::to_string(row.size()) + " fields, expected " +
                                  std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("features CSV: empty input");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return FeatureMatrix::from_matrix(std::move(m));
}

std::string write_bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = "edges,nodes,method,mean_s,std_s,epsilon,mults\n";
  for (const BenchRecord& r : records)
    out += std::to_string(r.edges) + "," + std::to_string(r.nodes) + "," + r.method + "," +
           format_double(r.mean_s) + "," + format_double(r.std_s) + "," +
           format_double(r.epsilon) + "," + std::to_string(r.mults) + "\n";
  return out;
}

namespace {

struct SvgSeries {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;  // (x, y), both positive
};

std::string svg_polyline(const SvgSeries& s, double x0, double x1, double y0, double y1,
                         double w, double h, double margin) {
  auto sx = [&](double v) {
    double t = x1 > x0 ? (std::log(v) - std::log(x0)) / (std::log(x1) - std::log(x0)) : 0.5;
    return margin + t * (w - 2 * margin);
  };
  auto sy = [&](double v) {
    double t = y1 > y0 ? (std::log(v) - std::log(y0)) / (std::log(y1) - std::log(y0)) : 0.5;
    return h - margin - t * (h - 2 * margin);
  };
  std::string pts;
  for (const auto& [x, y] : s.points) {
    if (!pts.empty()) pts += " ";
    pts += format_double(sx(x)) + "," + format_double(sy(y));
  }
  std::string out = "<polyline fill=\"none\" stroke=\"" + s.color +
                    "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
  for (const auto& [x, y] : s.points)
    out += "<circle cx=\"" + format_double(sx(x)) + "\" cy=\"" + format_double(sy(y)) +
           "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
  return out;
}

}  // namespace

std::string write_bench_svg(const std::vector<BenchRecord>& records) {
  SvgSeries time_series{"mean seconds", "#1f77b4", {}};
  SvgSeries mult_series{"multiplies", "#ff7f0e", {}};
  for (const BenchRecord& r : records) {
    if (!r.error.empty() || r.nodes <= 0) continue;
    if (r.mean_s > 0.0 && std::isfinite(r.mean_s))
      time_series.points.push_back({static_cast<double>(r.nodes), r.mean_s});
    if (r.mults > 0)
      mult_series.points.push_back({static_cast<double>(r.nodes), static_cast<double>(r.mults)});
  }
  const double w = 640, h = 420, margin = 50;
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
                    "viewBox=\"0 0 640 420\">\n<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  out += "<line x1=\"50\" y1=\"370\" x2=\"590\" y2=\"370\" stroke=\"black\"/>\n";
  out += "<line x1=\"50\" y1=\"50\" x2=\"50\" y2=\"370\" stroke=\"black\"/>\n";
  out += "<text x=\"320\" y=\"405\" text-anchor=\"middle\" font-size=\"13\">nodes (log)</text>\n";
  out += "<text x=\"15\" y=\"210\" text-anchor=\"middle\" font-size=\"13\" "
         "transform=\"rotate(-90 15 210)\">per-series log scale</text>\n";
  int legend_y = 60;
  for (const SvgSeries* s : {&time_series, &mult_series}) {
    if (s->points.size() < 2) continue;
    double x0 = s->points.front().first, x1 = x0, y0 = s->points.front().second, y1 = y0;
    for (const auto& [x, y] : s->points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
    out += svg_polyline(*s, x0, x1, y0, y1, w, h, margin);
    out += "<text x=\"560\" y=\"" + std::to_string(legend_y) + "\" text-anchor=\"end\" "
           "font-size=\"13\" fill=\"" + s->color + "\">" + s->label + "</text>\n";
    legend_y += 18;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace haarpool
