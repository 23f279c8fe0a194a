#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <Eigen/Eigenvalues>
#include <random>
#include <vector>

#include "synkit/graph.hpp"
#include "synkit/linalg.hpp"
#include "synkit/lti.hpp"

namespace synkit::oracles {

// Characteristic polynomial and adjugate expansion via the
// Faddeev-LeVerrier recurrence: adj(sI - A) = sum_k s^{n-1-k} B_k,
// det(sI - A) = sum_k c_{n-k} s^{n-k}.
struct ResolventExpansion {
  std::vector<MatrixXd> adj_coeffs;  // B_0 .. B_{n-1}
  std::vector<double> char_poly;     // c_n .. c_0 (descending powers)
};

inline ResolventExpansion faddeev_leverrier(const MatrixXd& A) {
  const Eigen::Index n = A.rows();
  ResolventExpansion out;
  out.char_poly.assign(static_cast<size_t>(n) + 1, 0.0);
  out.char_poly[0] = 1.0;
  MatrixXd Bk = MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    out.adj_coeffs.push_back(Bk);
    const double ck = -(A * Bk).trace() / static_cast<double>(k);
    out.char_poly[static_cast<size_t>(k)] = ck;
    Bk = A * Bk + ck * MatrixXd::Identity(n, n);
  }
  return out;
}

// Roots of a real polynomial (descending coefficients) via the companion
// matrix, after stripping negligible leading coefficients.
inline std::vector<Complex> poly_roots(std::vector<double> coeffs) {
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};
  size_t lead = 0;
  while (lead < coeffs.size() && std::abs(coeffs[lead]) < 1e-10 * scale) ++lead;
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  if (coeffs.size() <= 1) return {};
  const Eigen::Index deg = static_cast<Eigen::Index>(coeffs.size()) - 1;
  MatrixXd companion = MatrixXd::Zero(deg, deg);
  for (Eigen::Index i = 0; i < deg; ++i)
    companion(0, i) = -coeffs[static_cast<size_t>(i) + 1] / coeffs[0];
  companion.block(1, 0, deg - 1, deg - 1).setIdentity();
  return to_vector(eigenvalues(companion));
}

// SISO transmission zeros as the numerator roots of C adj(sI-A) B / det(sI-A).
// Valid for minimal realizations (no pole-zero cancellation).
inline std::vector<Complex> siso_zeros(const MatrixXd& A, const MatrixXd& B,
                                       const MatrixXd& C) {
  const auto expansion = faddeev_leverrier(A);
  std::vector<double> numerator;
  for (const auto& Bk : expansion.adj_coeffs)
    numerator.push_back((C * Bk * B)(0, 0));
  return poly_roots(numerator);
}

inline bool is_minimal_siso(const MatrixXd& A, const MatrixXd& B, const MatrixXd& C) {
  const Eigen::Index n = A.rows();
  MatrixXd ctrb(n, n), obs(n, n);
  MatrixXd col = B, row = C;
  for (Eigen::Index k = 0; k < n; ++k) {
    ctrb.col(k) = col;
    obs.row(k) = row;
    col = A * col;
    row = row * A;
  }
  return rank_svd(ctrb) == n && rank_svd(obs) == n;
}

// --- random generators (all explicitly seeded) ---

inline MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                              std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

inline MatrixXd random_well_conditioned(Eigen::Index n, std::mt19937_64& rng,
                                        double max_cond = 30.0) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    MatrixXd T = random_matrix(n, n, rng);
    const auto sv = T.jacobiSvd().singularValues();
    if (sv(n - 1) > 0 && sv(0) / sv(n - 1) < max_cond) return T;
  }
  return MatrixXd::Identity(n, n);
}

// Neutrally stable matrix: random Hurwitz/Schur part + skew/orthogonal
// boundary part under a random well-conditioned similarity.
inline MatrixXd random_neutrally_stable(int n, TimeDomain td, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> split(0, n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int nb = split(rng);
  const int nh = n - nb;
  MatrixXd blk = MatrixXd::Zero(n, n);
  if (nh > 0) {
    MatrixXd Ah = random_matrix(nh, nh, rng);
    if (td == TimeDomain::continuous) {
      double max_re = -1e300;
      const VectorXcd ev = eigenvalues(Ah);
      for (Eigen::Index i = 0; i < ev.size(); ++i) max_re = std::max(max_re, ev(i).real());
      Ah -= (max_re + 0.2 + unit(rng)) * MatrixXd::Identity(nh, nh);
    } else {
      double radius = 0.0;
      const VectorXcd ev = eigenvalues(Ah);
      for (Eigen::Index i = 0; i < ev.size(); ++i)
        radius = std::max(radius, std::abs(ev(i)));
      Ah *= (0.3 + 0.6 * unit(rng)) / std::max(radius, 1e-6);
    }
    blk.topLeftCorner(nh, nh) = Ah;
  }
  int at = nh;
  while (at < n) {
    if (n - at >= 2 && unit(rng) > 0.3) {
      const double angle = 0.2 + 2.5 * unit(rng);
      if (td == TimeDomain::continuous) {
        blk(at, at + 1) = angle;
        blk(at + 1, at) = -angle;
      } else {
        blk(at, at) = std::cos(angle);
        blk(at, at + 1) = std::sin(angle);
        blk(at + 1, at) = -std::sin(angle);
        blk(at + 1, at + 1) = std::cos(angle);
      }
      at += 2;
    } else {
      blk(at, at) = td == TimeDomain::continuous ? 0.0 : (unit(rng) > 0.5 ? 1.0 : -1.0);
      at += 1;
    }
  }
  const MatrixXd T = random_well_conditioned(n, rng);
  return T * blk * T.partialPivLu().solve(MatrixXd::Identity(n, n));
}

// Random Schur matrix with spectral radius below the given bound.
inline MatrixXd random_schur(int n, std::mt19937_64& rng, double radius_bound = 0.9) {
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  MatrixXd A = random_matrix(n, n, rng);
  double radius = 0.0;
  const VectorXcd ev = eigenvalues(A);
  for (Eigen::Index i = 0; i < ev.size(); ++i) radius = std::max(radius, std::abs(ev(i)));
  return A * (radius_bound * unit(rng) / std::max(radius, 1e-9));
}

// Random directed graph containing a spanning tree rooted at node 0:
// a random tree plus optional extra weighted edges.
inline DiGraph random_spanning_tree_graph(int n, std::mt19937_64& rng,
                                          double extra_edge_prob = 0.15) {
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MatrixXd w = MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    w(i, pick(rng)) = weight(rng);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && w(i, j) == 0.0 && unit(rng) < extra_edge_prob) w(i, j) = weight(rng);
  return DiGraph::from_weights(w);
}

}  // namespace synkit::oracles
