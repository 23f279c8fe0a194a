#include "synkit/lyapunov.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "synkit/errors.hpp"

namespace synkit {

namespace {

VectorXd vec(const MatrixXd& m) {
  return Eigen::Map<const VectorXd>(m.data(), m.size());
}

MatrixXd unvec(const VectorXd& v, Eigen::Index n) {
  return Eigen::Map<const MatrixXd>(v.data(), n, n);
}

}  // namespace

MatrixXd solve_continuous_lyapunov(const MatrixXd& A, const MatrixXd& Q) {
  const Eigen::Index n = A.rows();
  if (A.rows() != A.cols() || Q.rows() != n || Q.cols() != n)
    fail(ErrorCode::shape_mismatch, "lyapunov solve needs square A, Q of equal size");
  if (n == 0) return MatrixXd(0, 0);
  // vec(A^T X + X A) = (I (x) A^T + A^T (x) I) vec(X)
  const MatrixXd identity = MatrixXd::Identity(n, n);
  const MatrixXd lhs = kron(identity, A.transpose()) + kron(A.transpose(), identity);
  const VectorXd x = lhs.partialPivLu().solve(-vec(Q));
  MatrixXd X = unvec(x, n);
  return 0.5 * (X + X.transpose());
}

MatrixXd solve_discrete_lyapunov(const MatrixXd& A, const MatrixXd& Q) {
  const Eigen::Index n = A.rows();
  if (A.rows() != A.cols() || Q.rows() != n || Q.cols() != n)
    fail(ErrorCode::shape_mismatch, "lyapunov solve needs square A, Q of equal size");
  if (n == 0) return MatrixXd(0, 0);
  // vec(A^T X A - X) = (A^T (x) A^T - I) vec(X)
  const MatrixXd lhs = kron(A.transpose(), A.transpose()) -
                       MatrixXd::Identity(n * n, n * n);
  const VectorXd x = lhs.partialPivLu().solve(-vec(Q));
  MatrixXd X = unvec(x, n);
  return 0.5 * (X + X.transpose());
}

const char* to_string(CertificateKind kind) noexcept {
  switch (kind) {
    case CertificateKind::ct_semidefinite: return "ct_semidefinite";
    case CertificateKind::dt_semidefinite: return "dt_semidefinite";
    case CertificateKind::dt_observer_q: return "dt_observer_q";
  }
  return "unknown";
}

namespace {

// Representative boundary eigenvalues (imag >= 0) clustered by tolerance.
std::vector<Complex> boundary_representatives(const VectorXcd& ev, TimeDomain td,
                                              double scale) {
  const double bnd_tol = td == TimeDomain::continuous ? 1e-8 * scale : 1e-8;
  std::vector<Complex> reps;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Complex lam = ev(i);
    const bool boundary = td == TimeDomain::continuous
                              ? std::abs(lam.real()) <= bnd_tol
                              : std::abs(std::abs(lam) - 1.0) <= bnd_tol;
    if (!boundary || lam.imag() < -1e-12) continue;
    bool seen = false;
    for (const auto& r : reps)
      if (std::abs(lam - r) < 1e-7 * scale) seen = true;
    if (!seen) reps.push_back(lam);
  }
  return reps;
}

// Real basis of the (semi-simple) eigenspace union over the given
// representatives for matrix M. Complex pairs contribute [Re, Im] columns.
// The null-space cut is absolute at the parent scale so near-zero blocks
// resolve their full eigenspace.
MatrixXd real_eigenspace_basis(const MatrixXd& M, const std::vector<Complex>& reps,
                               double scale) {
  const Eigen::Index n = M.rows();
  const double cut = 1e-7 * scale;
  std::vector<MatrixXd> pieces;
  Eigen::Index total = 0;
  for (const auto& lam : reps) {
    if (std::abs(lam.imag()) <= 1e-8 * scale) {
      MatrixXd shifted = M;
      shifted.diagonal().array() -= lam.real();
      const MatrixXd ns = kernel_basis_abs(shifted, cut);
      pieces.push_back(ns);
      total += ns.cols();
    } else {
      MatrixXcd shifted = M.cast<Complex>();
      shifted.diagonal().array() -= lam;
      const MatrixXcd ns = kernel_basis_abs(shifted, cut);
      pieces.push_back(ns.real());
      pieces.push_back(ns.imag());
      total += 2 * ns.cols();
    }
  }
  MatrixXd basis(n, total);
  Eigen::Index at = 0;
  for (const auto& p : pieces) {
    basis.middleCols(at, p.cols()) = p;
    at += p.cols();
  }
  return basis;
}

struct NeutralSplit {
  MatrixXd T, T_inv;
  MatrixXd stable_block;    // Hurwitz (ct) / Schur (dt), possibly empty
  MatrixXd boundary_block;  // semi-simple boundary part, possibly empty
  Eigen::Index n_stable = 0, n_boundary = 0;
};

NeutralSplit split_neutral(const MatrixXd& A, TimeDomain td) {
  if (!is_neutrally_stable(A, td))
    fail(ErrorCode::not_neutrally_stable,
         std::string("matrix is not neutrally stable (") + to_string(td) + ")");
  const Eigen::Index n = A.rows();
  const double scale = std::max(1.0, spectral_norm(A));
  const auto reps = boundary_representatives(eigenvalues(A), td, scale);

  const MatrixXd Vb = real_eigenspace_basis(A, reps, scale);
  const Eigen::Index nb = Vb.cols();
  MatrixXd T(n, n);
  if (nb < n) {
    // The stable invariant subspace is the kernel of the boundary
    // left-eigenvector basis.
    const MatrixXd Wb = real_eigenspace_basis(A.transpose(), reps, scale);
    const MatrixXd Vh = kernel_basis(MatrixXd(Wb.transpose()), 1e-9);
    if (Vh.cols() + nb != n)
      fail(ErrorCode::numeric_failure, "stable/boundary subspace split is inconsistent");
    T << Vh, Vb;
  } else {
    T = Vb;
  }

  NeutralSplit split;
  split.T = T;
  split.T_inv = T.partialPivLu().inverse();
  split.n_stable = n - nb;
  split.n_boundary = nb;
  const MatrixXd blocked = split.T_inv * A * T;
  split.stable_block = blocked.topLeftCorner(split.n_stable, split.n_stable);
  split.boundary_block = blocked.bottomRightCorner(nb, nb);
  const double off =
      std::max(nb && split.n_stable
                   ? blocked.topRightCorner(split.n_stable, nb).cwiseAbs().maxCoeff()
                   : 0.0,
               nb && split.n_stable
                   ? blocked.bottomLeftCorner(nb, split.n_stable).cwiseAbs().maxCoeff()
                   : 0.0);
  if (off > 1e-7 * scale)
    fail(ErrorCode::numeric_failure, "invariant subspace split left large couplings");
  return split;
}

// Basis making a semi-simple boundary block skew (ct) / orthogonal (dt)
// in transformed coordinates; returns P_b = S_b^{-T} S_b^{-1}.
MatrixXd boundary_metric(const MatrixXd& Ab, TimeDomain td) {
  const Eigen::Index nb = Ab.rows();
  if (nb == 0) return MatrixXd(0, 0);
  const double scale = std::max(1.0, spectral_norm(Ab));
  const auto reps = boundary_representatives(eigenvalues(Ab), td, scale);
  const MatrixXd Sb = real_eigenspace_basis(Ab, reps, scale);
  if (Sb.cols() != nb)
    fail(ErrorCode::numeric_failure, "boundary block eigenbasis is incomplete");
  const auto lu = Sb.partialPivLu();
  const MatrixXd Sb_inv = lu.inverse();
  const MatrixXd K = Sb_inv * Ab * Sb;
  const double defect = td == TimeDomain::continuous
                            ? (K + K.transpose()).cwiseAbs().maxCoeff()
                            : (K.transpose() * K - MatrixXd::Identity(nb, nb))
                                  .cwiseAbs()
                                  .maxCoeff();
  if (defect > 1e-6 * scale)
    fail(ErrorCode::numeric_failure, "boundary normal form is out of tolerance");
  MatrixXd Pb = Sb_inv.transpose() * Sb_inv;
  return 0.5 * (Pb + Pb.transpose());
}

Certificate build_certificate(const MatrixXd& A, TimeDomain td) {
  if (A.rows() != A.cols())
    fail(ErrorCode::shape_mismatch, "certificate construction needs square A");
  const auto split = split_neutral(A, td);
  const Eigen::Index nh = split.n_stable, nb = split.n_boundary;
  MatrixXd middle = MatrixXd::Zero(nh + nb, nh + nb);
  if (nh > 0) {
    const MatrixXd identity = MatrixXd::Identity(nh, nh);
    middle.topLeftCorner(nh, nh) =
        td == TimeDomain::continuous
            ? solve_continuous_lyapunov(split.stable_block, identity)
            : solve_discrete_lyapunov(split.stable_block, identity);
  }
  if (nb > 0) middle.bottomRightCorner(nb, nb) = boundary_metric(split.boundary_block, td);

  MatrixXd P = split.T_inv.transpose() * middle * split.T_inv;
  P = 0.5 * (P + P.transpose());
  const double min_eig = sym_min_eig(P);
  if (min_eig <= 0.0)
    fail(ErrorCode::numeric_failure, "constructed certificate is not positive definite");
  P /= min_eig;  // canonical scaling: min-eig(P) = 1

  Certificate cert;
  cert.P = P;
  cert.kind = td == TimeDomain::continuous ? CertificateKind::ct_semidefinite
                                           : CertificateKind::dt_semidefinite;
  cert.slack = td == TimeDomain::continuous
                   ? sym_max_eig(P * A + A.transpose() * P)
                   : sym_max_eig(A.transpose() * P * A - P);
  const auto report = validate(cert, A);
  if (!report.pass)
    fail(ErrorCode::numeric_failure, "constructed certificate failed validation");
  return cert;
}

}  // namespace

Certificate ct_certificate(const MatrixXd& A) {
  return build_certificate(A, TimeDomain::continuous);
}

Certificate dt_certificate(const MatrixXd& A) {
  return build_certificate(A, TimeDomain::discrete);
}

Certificate dt_observer_certificate(const MatrixXd& A, const MatrixXd& H,
                                    const MatrixXd& C) {
  if (H.rows() != A.rows() || C.cols() != A.cols() || H.cols() != C.rows())
    fail(ErrorCode::shape_mismatch, "observer certificate needs A (n x n), H (n x p), C (p x n)");
  const MatrixXd M = A - H * C;
  const VectorXcd ev = eigenvalues(M);
  double radius = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) radius = std::max(radius, std::abs(ev(i)));
  if (radius >= 1.0)
    fail(ErrorCode::not_schur,
         "A - HC has spectral radius " + std::to_string(radius));
  const Eigen::Index n = A.rows();
  const MatrixXd Q = solve_discrete_lyapunov(M, 4.0 * MatrixXd::Identity(n, n));
  const double residual = spectral_norm(
      MatrixXd(M.transpose() * Q * M - Q + 4.0 * MatrixXd::Identity(n, n)));
  if (residual > 1e-10 * std::max(1.0, spectral_norm(Q)))
    fail(ErrorCode::numeric_failure, "observer Lyapunov equation residual too large");
  if (sym_min_eig(Q) <= 0.0)
    fail(ErrorCode::numeric_failure, "observer certificate is not positive definite");
  return {Q, CertificateKind::dt_observer_q, residual};
}

ValidationReport validate(const Certificate& cert, const MatrixXd& A,
                          const std::optional<MatrixXd>& H,
                          const std::optional<MatrixXd>& C) {
  const Eigen::Index n = A.rows();
  if (A.rows() != A.cols() || cert.P.rows() != n || cert.P.cols() != n)
    fail(ErrorCode::shape_mismatch, "certificate and matrix sizes disagree");
  if ((cert.P - cert.P.transpose()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, spectral_norm(cert.P)))
    fail(ErrorCode::shape_mismatch, "certificate matrix is not symmetric");

  ValidationReport report;
  const double p_norm = spectral_norm(cert.P);
  report.min_eig = sym_min_eig(cert.P);
  report.positive_definite = report.min_eig > 1e-10 * p_norm;

  switch (cert.kind) {
    case CertificateKind::ct_semidefinite:
      report.slack = sym_max_eig(cert.P * A + A.transpose() * cert.P);
      report.threshold = 1e-8 * p_norm * spectral_norm(A);
      break;
    case CertificateKind::dt_semidefinite:
      report.slack = sym_max_eig(A.transpose() * cert.P * A - cert.P);
      report.threshold = 1e-8 * p_norm * spectral_norm(A);
      break;
    case CertificateKind::dt_observer_q: {
      if (!H || !C)
        fail(ErrorCode::shape_mismatch, "observer certificate validation needs H and C");
      if (H->rows() != n || C->cols() != n || H->cols() != C->rows())
        fail(ErrorCode::shape_mismatch, "observer validation shapes disagree");
      const MatrixXd M = A - (*H) * (*C);
      report.slack = spectral_norm(MatrixXd(M.transpose() * cert.P * M - cert.P +
                                            4.0 * MatrixXd::Identity(n, n)));
      report.threshold = 1e-8 * std::max(1.0, p_norm);
      break;
    }
  }
  report.pass = report.positive_definite && report.slack <= report.threshold;
  return report;
}

}  // namespace synkit
