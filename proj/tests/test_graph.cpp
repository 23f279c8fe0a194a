#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "support/oracles.hpp"
#include "synkit/errors.hpp"
#include "synkit/graph.hpp"

using namespace synkit;

TEST_CASE("laplacian of a single node is zero") {
  const auto g = DiGraph::from_weights(MatrixXd::Zero(1, 1));
  CHECK(laplacian(g).L(0, 0) == 0.0);
}

TEST_CASE("laplacian of the 60-node directed cycle") {
  const auto g = DiGraph::cycle(60);
  const MatrixXd& L = laplacian(g).L;
  for (int i = 0; i < 60; ++i) {
    CHECK(L(i, i) == doctest::Approx(1.0));
    CHECK(L((i + 1) % 60, i) == doctest::Approx(-1.0));
  }
  CHECK(L.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("3-node cycle Laplacian eigenvalues") {
  const auto spec = nonzero_spectrum(laplacian(DiGraph::cycle(3)));
  const double half_sqrt3 = 0.8660254037844386;
  CHECK(match_spectra(spec, {{1.5, half_sqrt3}, {1.5, -half_sqrt3}}, 1e-12));
}

TEST_CASE("row stochastic matrix of the 60-cycle with unit bounds") {
  const auto g = DiGraph::cycle(60);
  const auto rs = row_stochastic(g, VectorXd::Ones(60));
  for (int i = 0; i < 60; ++i) {
    CHECK(rs.D(i, i) == doctest::Approx(0.5));
    CHECK(rs.D(i, (i + 59) % 60) == doctest::Approx(0.5));
  }
  CHECK((rs.D.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("row stochastic of a single node is [1]") {
  const auto g = DiGraph::from_weights(MatrixXd::Zero(1, 1));
  CHECK(row_stochastic(g, VectorXd::Zero(1)).D(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("row stochastic of the 2-node chain") {
  const auto g = DiGraph::from_edges(2, {{0, 1, 1.0}});
  VectorXd din(2);
  din << 0, 1;
  const auto rs = row_stochastic(g, din);
  MatrixXd expected(2, 2);
  expected << 1, 0, 0.5, 0.5;
  CHECK((rs.D - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("row stochastic rejects bounds below the in-degree") {
  const auto g = DiGraph::cycle(3);
  CHECK_THROWS_WITH_AS(row_stochastic(g, VectorXd::Constant(3, 0.5)),
                       doctest::Contains("BoundTooSmall"), Error);
}

TEST_CASE("spanning tree detection") {
  CHECK(DiGraph::cycle(60).has_spanning_tree());
  CHECK_FALSE(DiGraph::from_weights(MatrixXd::Zero(2, 2)).has_spanning_tree());
  CHECK(DiGraph::star(6).has_spanning_tree());
  CHECK(DiGraph::path(4).has_spanning_tree());
}

TEST_CASE("nonzero spectrum of the 60-cycle matches the circulant formula") {
  const auto spec = nonzero_spectrum(laplacian(DiGraph::cycle(60)));
  std::vector<Complex> expected;
  for (int k = 1; k < 60; ++k) {
    const double theta = 2.0 * M_PI * k / 60.0;
    expected.emplace_back(1.0 - std::cos(theta), -std::sin(theta));
  }
  CHECK(match_spectra(spec, expected, 1e-9));
}

TEST_CASE("nonzero spectrum of small graphs") {
  const auto both_ways = DiGraph::from_edges(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  CHECK(match_spectra(nonzero_spectrum(laplacian(both_ways)), {{2.0, 0.0}}, 1e-12));
  CHECK(match_spectra(nonzero_spectrum(laplacian(DiGraph::path(2))), {{1.0, 0.0}},
                      1e-12));
}

TEST_CASE("nonzero spectrum rejects repeated zero eigenvalues") {
  MatrixXd w = MatrixXd::Zero(4, 4);
  w(1, 0) = 1.0;  // two disconnected 2-chains
  w(3, 2) = 1.0;
  const auto g = DiGraph::from_weights(w);
  CHECK_THROWS_WITH_AS(nonzero_spectrum(laplacian(g)), doctest::Contains("ZeroNotSimple"),
                       Error);
}

TEST_CASE("edge list parsing sums duplicates and skips comments") {
  std::istringstream in("# comment\n1 2 0.5\n1 2 0.25\n\n2 3 1 # trailing\n");
  const auto g = DiGraph::parse_edge_list(in);
  CHECK(g.node_count() == 3);
  CHECK(g.weights()(1, 0) == doctest::Approx(0.75));
  CHECK(g.weights()(2, 1) == doctest::Approx(1.0));
}

TEST_CASE("edge list rejects malformed rows") {
  std::istringstream in("1 2\n");
  CHECK_THROWS_AS(DiGraph::parse_edge_list(in), Error);
}

TEST_CASE("generator specs") {
  CHECK(make_graph("cycle(60)").node_count() == 60);
  CHECK(make_graph("path(4)").node_count() == 4);
  CHECK(make_graph("star(8)").node_count() == 8);
  const auto t1 = make_graph("random_tree(25, 7)");
  const auto t2 = DiGraph::random_tree(25, 7);
  CHECK((t1.weights() - t2.weights()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(t1.has_spanning_tree());
  CHECK_THROWS_AS(make_graph("mesh(4)"), Error);
}

TEST_CASE("graph invariants hold on random spanning-tree graphs") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> size(2, 50);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    const auto g = oracles::random_spanning_tree_graph(n, rng);
    REQUIRE(g.has_spanning_tree());

    const auto spec = nonzero_spectrum(laplacian(g));
    for (const auto& lam : spec) CHECK(lam.real() > 1e-10);

    // (I + D_in)^{-1} L = I - D entrywise
    const VectorXd din = g.in_degrees() * 1.25 + VectorXd::Constant(n, 0.1);
    const auto rs = row_stochastic(g, din);
    const MatrixXd lhs =
        (VectorXd::Ones(n) + din).cwiseInverse().asDiagonal() * laplacian(g).L;
    const MatrixXd rhs = MatrixXd::Identity(n, n) - rs.D;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i < n; ++i) CHECK(rs.D(i, i) > 0.0);
  }
}

TEST_CASE("reachability and spectral spanning-tree answers agree") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> size(2, 20);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = size(rng);
    MatrixXd w = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && unit(rng) < 0.18) w(i, j) = 0.5 + unit(rng);
    const auto g = DiGraph::from_weights(w);

    const VectorXcd ev = eigenvalues(laplacian(g).L);
    const double scale = std::max(1.0, spectral_norm(laplacian(g).L));
    int zero_count = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (std::abs(ev(i)) < 1e-8 * scale) ++zero_count;
    CHECK(g.has_spanning_tree() == (zero_count == 1));
  }
}
