#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "synkit/linalg.hpp"

namespace synkit {

/// Weighted directed graph. weights()(i, j) is the weight of the edge
/// j -> i (node j is an in-neighbor of node i). No self-loops, all
/// weights nonnegative.
class DiGraph {
 public:
  static DiGraph from_weights(MatrixXd weights);

  /// Edges are (src, dst, weight) with 0-based node ids; duplicate edges
  /// accumulate their weights.
  static DiGraph from_edges(int node_count,
                            const std::vector<std::tuple<int, int, double>>& edges);

  static DiGraph cycle(int n);
  static DiGraph path(int n);
  static DiGraph star(int n);
  static DiGraph random_tree(int n, std::uint64_t seed);

  /// Text format: one `src dst weight` edge per line, 1-based ids,
  /// '#' starts a comment. Node count is the largest id seen.
  static DiGraph parse_edge_list(std::istream& in);

  int node_count() const { return static_cast<int>(weights_.rows()); }
  const MatrixXd& weights() const { return weights_; }

  /// Weighted in-degree of every node (row sums of the weights).
  VectorXd in_degrees() const { return weights_.rowwise().sum(); }

  /// True iff some root reaches every node along directed edges.
  bool has_spanning_tree() const;

 private:
  explicit DiGraph(MatrixXd w) : weights_(std::move(w)) {}
  MatrixXd weights_;
};

struct Laplacian {
  MatrixXd L;
};

struct RowStochastic {
  MatrixXd D;
  VectorXd din_bar;
};

Laplacian laplacian(const DiGraph& g);

/// Requires din_bar(i) >= in-degree(i); throws BoundTooSmall otherwise.
RowStochastic row_stochastic(const DiGraph& g, const VectorXd& din_bar);

/// Eigenvalues of L with the simple zero eigenvalue removed, sorted.
/// Throws ZeroNotSimple when the zero eigenvalue is not simple.
std::vector<Complex> nonzero_spectrum(const Laplacian& l);

/// Eigenvalues of D with the simple unit eigenvalue removed, sorted.
std::vector<Complex> nonunit_spectrum(const RowStochastic& rs);

/// Builds a graph from a generator spec: "cycle(60)", "path(4)",
/// "star(8)", "random_tree(25, 7)" (seed defaults to 0).
DiGraph make_graph(const std::string& spec);

DiGraph read_edge_list(const std::string& path);

}  // namespace synkit
