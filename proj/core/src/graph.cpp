#include "synkit/graph.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "synkit/errors.hpp"

namespace synkit {

DiGraph DiGraph::from_weights(MatrixXd weights) {
  if (weights.rows() != weights.cols() || weights.rows() < 1)
    fail(ErrorCode::invalid_graph, "weight matrix must be square and nonempty");
  for (Eigen::Index i = 0; i < weights.rows(); ++i) {
    if (weights(i, i) != 0.0)
      fail(ErrorCode::invalid_graph, "self-loop at node " + std::to_string(i + 1));
    for (Eigen::Index j = 0; j < weights.cols(); ++j)
      if (!(weights(i, j) >= 0.0))
        fail(ErrorCode::invalid_graph, "negative or non-finite weight at (" +
                                           std::to_string(i + 1) + "," +
                                           std::to_string(j + 1) + ")");
  }
  return DiGraph(std::move(weights));
}

DiGraph DiGraph::from_edges(int node_count,
                            const std::vector<std::tuple<int, int, double>>& edges) {
  if (node_count < 1) fail(ErrorCode::invalid_graph, "need at least one node");
  MatrixXd w = MatrixXd::Zero(node_count, node_count);
  for (const auto& [src, dst, weight] : edges) {
    if (src < 0 || src >= node_count || dst < 0 || dst >= node_count)
      fail(ErrorCode::invalid_graph, "edge endpoint out of range");
    if (src == dst) fail(ErrorCode::invalid_graph, "self-loop rejected");
    w(dst, src) += weight;  // duplicates sum
  }
  return from_weights(std::move(w));
}

DiGraph DiGraph::cycle(int n) {
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 1.0);
  if (n > 1) edges.emplace_back(n - 1, 0, 1.0);
  return from_edges(n, edges);
}

DiGraph DiGraph::path(int n) {
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1, 1.0);
  return from_edges(n, edges);
}

DiGraph DiGraph::star(int n) {
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i, 1.0);
  return from_edges(n, edges);
}

DiGraph DiGraph::random_tree(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::tuple<int, int, double>> edges;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    edges.emplace_back(pick(rng), i, 1.0);
  }
  return from_edges(n, edges);
}

DiGraph DiGraph::parse_edge_list(std::istream& in) {
  std::vector<std::tuple<int, int, double>> edges;
  int max_id = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    int src = 0, dst = 0;
    double weight = 0.0;
    if (!(fields >> src)) continue;  // blank line
    if (!(fields >> dst >> weight))
      fail(ErrorCode::parse_error,
           "edge list line " + std::to_string(lineno) + ": expected `src dst weight`");
    if (src < 1 || dst < 1)
      fail(ErrorCode::parse_error,
           "edge list line " + std::to_string(lineno) + ": ids are 1-based");
    max_id = std::max({max_id, src, dst});
    edges.emplace_back(src - 1, dst - 1, weight);
  }
  if (max_id == 0) fail(ErrorCode::parse_error, "edge list is empty");
  return from_edges(max_id, edges);
}

bool DiGraph::has_spanning_tree() const {
  const int n = node_count();
  std::vector<std::vector<int>> out_edges(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (weights_(v, u) > 0.0) out_edges[u].push_back(v);

  std::vector<char> seen(n);
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(1, root);
    seen[root] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : out_edges[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++reached;
          stack.push_back(v);
        }
    }
    if (reached == n) return true;
  }
  return false;
}

Laplacian laplacian(const DiGraph& g) {
  const MatrixXd& w = g.weights();
  MatrixXd l = -w;
  l.diagonal() = g.in_degrees();
  return {l};
}

RowStochastic row_stochastic(const DiGraph& g, const VectorXd& din_bar) {
  const int n = g.node_count();
  if (din_bar.size() != n)
    fail(ErrorCode::shape_mismatch, "din_bar must have one entry per node");
  const VectorXd deg = g.in_degrees();
  for (int i = 0; i < n; ++i)
    if (din_bar(i) < deg(i) - 1e-12)
      fail(ErrorCode::bound_too_small,
           "din_bar(" + std::to_string(i + 1) + ") = " + std::to_string(din_bar(i)) +
               " below in-degree " + std::to_string(deg(i)));
  MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    const double scale = 1.0 / (1.0 + din_bar(i));
    double off = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      d(i, j) = g.weights()(i, j) * scale;
      off += d(i, j);
    }
    d(i, i) = 1.0 - off;
  }
  return {d, din_bar};
}

namespace {

std::vector<Complex> drop_simple_eigenvalue(const MatrixXd& m, Complex at,
                                            const char* what) {
  const VectorXcd ev = eigenvalues(m);
  const double scale = std::max(1.0, spectral_norm(m));
  std::vector<Complex> kept;
  int dropped = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i) - at) < 1e-8 * scale)
      ++dropped;
    else
      kept.push_back(ev(i));
  }
  if (dropped != 1)
    fail(ErrorCode::zero_not_simple,
         std::string(what) + " eigenvalue has multiplicity " + std::to_string(dropped));
  sort_spectrum(kept);
  return kept;
}

}  // namespace

std::vector<Complex> nonzero_spectrum(const Laplacian& l) {
  return drop_simple_eigenvalue(l.L, Complex(0, 0), "zero");
}

std::vector<Complex> nonunit_spectrum(const RowStochastic& rs) {
  return drop_simple_eigenvalue(rs.D, Complex(1, 0), "unit");
}

DiGraph make_graph(const std::string& spec) {
  const auto open = spec.find('(');
  const auto close = spec.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    fail(ErrorCode::parse_error, "graph spec must look like `cycle(60)`: " + spec);
  const std::string name = spec.substr(0, open);
  std::string args = spec.substr(open + 1, close - open - 1);
  for (char& c : args)
    if (c == ',') c = ' ';
  std::istringstream in(args);
  long long n = 0;
  if (!(in >> n) || n < 1)
    fail(ErrorCode::parse_error, "graph spec needs a positive node count: " + spec);
  if (name == "cycle") return DiGraph::cycle(static_cast<int>(n));
  if (name == "path") return DiGraph::path(static_cast<int>(n));
  if (name == "star") return DiGraph::star(static_cast<int>(n));
  if (name == "random_tree") {
    std::uint64_t seed = 0;
    in >> seed;
    return DiGraph::random_tree(static_cast<int>(n), seed);
  }
  fail(ErrorCode::parse_error, "unknown graph generator: " + name);
}

DiGraph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse_error, "cannot open edge list: " + path);
  return DiGraph::parse_edge_list(in);
}

}  // namespace synkit
