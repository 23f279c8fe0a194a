#include "synkit/placement.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "synkit/errors.hpp"

namespace synkit {

std::vector<double> default_observer_poles(int count, TimeDomain td) {
  std::vector<double> poles;
  poles.reserve(static_cast<size_t>(count));
  if (td == TimeDomain::continuous) {
    for (int k = 0; k < count; ++k) poles.push_back(-1.0 - 0.5 * k);
  } else {
    for (int k = 0; k < count; ++k) {
      const int step = (k + 1) / 2;
      double p = (k % 2 == 1 ? 1.0 : -1.0) * 0.1 * step;
      if (std::abs(p) >= 0.95) p = 0.9 - 1e-3 * k;  // keep well inside the disk
      poles.push_back(p);
    }
  }
  return poles;
}

namespace {

// Solves A X - X Lambda = Q for diagonal Lambda via the vectorized system.
MatrixXd solve_sylvester_diag(const MatrixXd& A, const VectorXd& lambda,
                              const MatrixXd& Q) {
  const Eigen::Index n = A.rows();
  const Eigen::Index k = lambda.size();
  MatrixXd lhs = MatrixXd::Zero(n * k, n * k);
  for (Eigen::Index j = 0; j < k; ++j)
    lhs.block(j * n, j * n, n, n) = A - lambda(j) * MatrixXd::Identity(n, n);
  VectorXd rhs(n * k);
  for (Eigen::Index j = 0; j < k; ++j) rhs.segment(j * n, n) = Q.col(j);
  const VectorXd x = lhs.partialPivLu().solve(rhs);
  MatrixXd X(n, k);
  for (Eigen::Index j = 0; j < k; ++j) X.col(j) = x.segment(j * n, n);
  return X;
}

bool strictly_stable(Complex lam, TimeDomain td, double tol) {
  return td == TimeDomain::continuous ? lam.real() < -tol : std::abs(lam) < 1.0 - tol;
}

}  // namespace

MatrixXd place_observer_gain(const MatrixXd& A, const MatrixXd& C, TimeDomain td) {
  const Eigen::Index n = A.rows();
  const Eigen::Index p = C.rows();
  if (A.rows() != A.cols() || C.cols() != n)
    fail(ErrorCode::shape_mismatch, "observer placement needs A (n x n), C (p x n)");
  const double scale = std::max(1.0, spectral_norm(A));

  if (p == 0 || spectral_norm(C) == 0.0) {
    const VectorXcd ev = eigenvalues(A);
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (!strictly_stable(ev(i), td, 1e-10))
        fail(ErrorCode::observer_design_failed,
             "no usable output and the state matrix is not stable");
    return MatrixXd::Zero(n, std::max<Eigen::Index>(p, 0));
  }

  // Observability split: T = [W U] orthogonal, W spans the observable
  // directions, U the kernel of the observability matrix.
  MatrixXd obs(n * p, n);
  MatrixXd block = C;
  for (Eigen::Index k = 0; k < n; ++k) {
    obs.middleRows(k * p, p) = block;
    block = block * A;
  }
  Eigen::JacobiSVD<MatrixXd> svd(obs, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  const double cut = 1e-10 * std::max(sv(0), 1e-300);
  Eigen::Index n_obs = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++n_obs;
  const MatrixXd W = svd.matrixV().leftCols(n_obs);
  const MatrixXd U = svd.matrixV().rightCols(n - n_obs);

  if (n_obs < n) {
    const VectorXcd hidden = eigenvalues(MatrixXd(U.transpose() * A * U));
    for (Eigen::Index i = 0; i < hidden.size(); ++i)
      if (!strictly_stable(hidden(i), td, 1e-10))
        fail(ErrorCode::observer_design_failed,
             "pair is not detectable: unobservable mode at re/|.| boundary");
  }

  const MatrixXd Ao = W.transpose() * A * W;
  const MatrixXd Co = C * W;

  // Desired locations, nudged off the plant spectrum (Sylvester solvability)
  // while staying distinct and inside the stability region.
  std::vector<double> poles = default_observer_poles(static_cast<int>(n_obs), td);
  const VectorXcd plant = eigenvalues(Ao);
  for (size_t i = 0; i < poles.size(); ++i) {
    bool clash = true;
    int guard = 0;
    while (clash && guard++ < 64) {
      clash = false;
      for (Eigen::Index j = 0; j < plant.size(); ++j)
        if (std::abs(plant(j) - Complex(poles[i], 0)) < 1e-6) clash = true;
      for (size_t j = 0; j < i; ++j)
        if (std::abs(poles[j] - poles[i]) < 1e-6) clash = true;
      if (clash)
        poles[i] += td == TimeDomain::continuous ? -0.2310 : 0.0131;
      if (td == TimeDomain::discrete && std::abs(poles[i]) >= 0.99)
        poles[i] *= -0.5;
    }
  }
  VectorXd lambda = Eigen::Map<VectorXd>(poles.data(), static_cast<Eigen::Index>(poles.size()));

  // Dual Sylvester placement: Ao^T X - X Lambda = Co^T G, F = G X^{-1},
  // then eig(Ao - F^T Co) = Lambda.
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::mt19937_64 gen(0xb5e77e5ULL + static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> gauss;
    MatrixXd G(p, n_obs);
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = 0; j < n_obs; ++j) G(i, j) = gauss(gen);
    const MatrixXd X =
        solve_sylvester_diag(MatrixXd(Ao.transpose()), lambda, MatrixXd(Co.transpose() * G));
    Eigen::JacobiSVD<MatrixXd> xsvd(X);
    if (xsvd.singularValues()(0) <= 0.0 ||
        xsvd.singularValues()(n_obs - 1) < 1e-10 * xsvd.singularValues()(0))
      continue;
    const MatrixXd F = X.transpose().partialPivLu().solve(G.transpose()).transpose();
    const MatrixXd Ho = F.transpose();
    std::vector<Complex> want(poles.begin(), poles.end());
    if (!match_spectra(to_vector(eigenvalues(MatrixXd(Ao - Ho * Co))), want,
                       1e-6 * scale))
      continue;
    const MatrixXd H = W * Ho;
    const VectorXcd closed = eigenvalues(MatrixXd(A - H * C));
    bool ok = true;
    for (Eigen::Index i = 0; i < closed.size(); ++i)
      if (!strictly_stable(closed(i), td, 1e-10)) ok = false;
    if (ok) return H;
  }
  fail(ErrorCode::observer_design_failed, "pole placement did not converge");
}

}  // namespace synkit
