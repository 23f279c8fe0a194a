#pragma once

#include <optional>

#include "synkit/linalg.hpp"
#include "synkit/lti.hpp"

namespace synkit {

/// Solves A^T X + X A + Q = 0 (direct vectorized solve; Q symmetric).
MatrixXd solve_continuous_lyapunov(const MatrixXd& A, const MatrixXd& Q);

/// Solves A^T X A - X + Q = 0.
MatrixXd solve_discrete_lyapunov(const MatrixXd& A, const MatrixXd& Q);

enum class CertificateKind { ct_semidefinite, dt_semidefinite, dt_observer_q };

const char* to_string(CertificateKind kind) noexcept;

/// Positive-definite matrix certifying one of
///   P A + A^T P <= 0        (ct_semidefinite)
///   A^T P A - P <= 0        (dt_semidefinite)
///   (A-HC)^T Q (A-HC) - Q + 4I = 0   (dt_observer_q)
/// slack is the most-positive eigenvalue of the symmetrized left side
/// (the equation residual norm for the observer kind).
struct Certificate {
  MatrixXd P;
  CertificateKind kind = CertificateKind::ct_semidefinite;
  double slack = 0.0;
};

/// Builds P > 0 with PA + A^T P <= 0 for a neutrally stable A.
/// The boundary part is handled by a real skew-normalizing basis, the
/// strictly stable part by a Lyapunov solve; the result is scaled so
/// min-eig(P) = 1. Throws NotNeutrallyStable.
Certificate ct_certificate(const MatrixXd& A);

/// Discrete analogue: P > 0 with A^T P A - P <= 0, boundary part made
/// orthogonal in transformed coordinates.
Certificate dt_certificate(const MatrixXd& A);

/// Unique Q > 0 solving (A-HC)^T Q (A-HC) - Q + 4I = 0.
/// Throws NotSchur when A - HC has spectral radius >= 1.
Certificate dt_observer_certificate(const MatrixXd& A, const MatrixXd& H,
                                    const MatrixXd& C);

struct ValidationReport {
  bool positive_definite = false;
  double min_eig = 0.0;
  double slack = 0.0;       // recomputed, never trusted from the certificate
  double threshold = 0.0;   // acceptance bound for the slack
  bool pass = false;
};

/// Recomputes the certified inequality/equation from scratch.
ValidationReport validate(const Certificate& cert, const MatrixXd& A,
                          const std::optional<MatrixXd>& H = std::nullopt,
                          const std::optional<MatrixXd>& C = std::nullopt);

}  // namespace synkit
