#include "synkit/protocol.hpp"

#include <cmath>

#include "synkit/errors.hpp"
#include "synkit/placement.hpp"

namespace synkit {

const char* to_string(ProtocolKind kind) noexcept {
  switch (kind) {
    case ProtocolKind::ct_full: return "ct_full";
    case ProtocolKind::ct_partial: return "ct_partial";
    case ProtocolKind::dt_full: return "dt_full";
    case ProtocolKind::dt_partial: return "dt_partial";
  }
  return "unknown";
}

ProtocolKind kind_of(const Protocol& p) {
  switch (p.index()) {
    case 0: return ProtocolKind::ct_full;
    case 1: return ProtocolKind::ct_partial;
    case 2: return ProtocolKind::dt_full;
    default: return ProtocolKind::dt_partial;
  }
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::precondition_failed, what);
}

Certificate certificate_for(const MatrixXd& A, TimeDomain td,
                            const std::optional<MatrixXd>& supplied) {
  if (!supplied) {
    return td == TimeDomain::continuous ? ct_certificate(A) : dt_certificate(A);
  }
  Certificate cert;
  cert.P = *supplied;
  cert.kind = td == TimeDomain::continuous ? CertificateKind::ct_semidefinite
                                           : CertificateKind::dt_semidefinite;
  const auto report = validate(cert, A);
  if (!report.pass)
    fail(ErrorCode::precondition_failed,
         "supplied P does not certify the Lyapunov inequality (slack " +
             std::to_string(report.slack) + ")");
  cert.slack = report.slack;
  return cert;
}

MatrixXd observer_for(const MatrixXd& A, const MatrixXd& C, TimeDomain td,
                      const std::optional<MatrixXd>& supplied) {
  if (!supplied) return place_observer_gain(A, C, td);
  if (supplied->rows() != A.rows() || supplied->cols() != C.rows())
    fail(ErrorCode::shape_mismatch, "supplied H has the wrong shape");
  const VectorXcd ev = eigenvalues(MatrixXd(A - (*supplied) * C));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const bool stable = td == TimeDomain::continuous ? ev(i).real() < 0.0
                                                     : std::abs(ev(i)) < 1.0;
    if (!stable)
      fail(ErrorCode::observer_design_failed,
           "supplied H does not stabilize the observer");
  }
  return *supplied;
}

}  // namespace

CtFullProtocol synth_ct_full(const LtiModel& m, double rho, const SynthOptions& opts) {
  require(m.time_domain == TimeDomain::continuous, "model must be continuous-time");
  require(rho > 0.0, "rho must be positive");
  require(is_stabilizable(m.A, m.B, m.time_domain), "(A, B) is not stabilizable");
  require(is_neutrally_stable(m.A, m.time_domain), "A is not neutrally stable");
  return {certificate_for(m.A, TimeDomain::continuous, opts.supplied_P), rho};
}

CtPartialProtocol synth_ct_partial(const LtiModel& m, const PreCompensator& pc,
                                   double rho, const SynthOptions& opts) {
  require(m.time_domain == TimeDomain::continuous, "model must be continuous-time");
  require(rho > 0.0, "rho must be positive");
  const CompensatedAgent ca = compose(m, pc);
  const StructuralReport rep = structural_report(ca.to_model());
  require(rep.stabilizable, "compensated agent is not stabilizable");
  require(rep.detectable, "compensated agent is not detectable");
  require(rep.neutrally_stable, "compensated agent is not neutrally stable");
  require(rep.left_invertible, "compensated agent is not left invertible");
  require(rep.minimum_phase, "compensated agent is not minimum phase");
  require(rep.uniform_rank_one, "compensated agent is not uniform rank one");

  CtPartialProtocol proto;
  proto.pre = pc;
  proto.scb = opts.supplied_S_inv ? scb_from_state_transform(ca, *opts.supplied_S_inv)
                                  : scb_decompose(ca);
  proto.H = observer_for(proto.scb.A11, proto.scb.Cbar, TimeDomain::continuous,
                         opts.supplied_H);
  proto.P = certificate_for(ca.At, TimeDomain::continuous, opts.supplied_P);
  proto.rho = rho;
  return proto;
}

DtFullProtocol synth_dt_full(const LtiModel& m, std::optional<double> epsilon,
                             const SynthOptions& opts) {
  require(m.time_domain == TimeDomain::discrete, "model must be discrete-time");
  require(spectral_norm(m.B) > 0.0, "input matrix is zero");
  require(is_stabilizable(m.A, m.B, m.time_domain), "(A, B) is not stabilizable");
  require(is_neutrally_stable(m.A, m.time_domain), "A is not neutrally stable");

  DtFullProtocol proto;
  proto.P = certificate_for(m.A, TimeDomain::discrete, opts.supplied_P);
  proto.epsilon_star =
      1.0 / spectral_norm(MatrixXd(m.B.transpose() * proto.P.P * m.B));
  if (epsilon) {
    require(*epsilon > 0.0, "epsilon must be positive");
    if (*epsilon > proto.epsilon_star && !opts.override_gain_bound)
      fail(ErrorCode::epsilon_too_large,
           "epsilon " + std::to_string(*epsilon) + " exceeds epsilon* " +
               std::to_string(proto.epsilon_star));
    proto.epsilon = *epsilon;
    proto.gain_overridden = *epsilon > proto.epsilon_star;
  } else {
    proto.epsilon = proto.epsilon_star;
  }
  return proto;
}

DtPartialProtocol synth_dt_partial(const LtiModel& m, std::optional<double> delta,
                                   const SynthOptions& opts) {
  require(m.time_domain == TimeDomain::discrete, "model must be discrete-time");
  require(spectral_norm(m.B) > 0.0, "input matrix is zero");
  const StructuralReport rep = structural_report(m);
  require(rep.stabilizable, "(A, B) is not stabilizable");
  require(rep.detectable, "(A, C) is not detectable");
  require(rep.neutrally_stable, "A is not neutrally stable");

  DtPartialProtocol proto;
  proto.H = observer_for(m.A, m.C, TimeDomain::discrete, opts.supplied_H);
  proto.P = certificate_for(m.A, TimeDomain::discrete, opts.supplied_P);
  proto.Q = dt_observer_certificate(m.A, proto.H, m.C);

  const MatrixXd& A = m.A;
  const MatrixXd& B = m.B;
  const MatrixXd& P = proto.P.P;
  const MatrixXd& Q = proto.Q.P;
  const MatrixXd AHC = A - proto.H * m.C;
  const double norm_BtQ = spectral_norm(MatrixXd(B.transpose() * Q));
  const double norm_AHC = spectral_norm(AHC);
  const double norm_BBtPA = spectral_norm(MatrixXd(B * B.transpose() * P * A));
  const double norm_Q = spectral_norm(Q);

  DtGainConstants& k = proto.constants;
  k.M1 = 2.0 * norm_BtQ * norm_AHC;
  // Deadbeat observers give M1 = 0; any upper bound of the true coefficient
  // keeps the gain-bound chain valid, so floor it to keep delta* positive.
  if (norm_AHC <= 1e-10 * std::max(1.0, spectral_norm(A))) {
    k.M1 = std::max(k.M1, 1.0);
    k.m1_floored = true;
  }
  k.M2 = spectral_norm(MatrixXd(B.transpose() * Q * B));
  k.M3 = 2.0 * norm_BtQ * norm_BBtPA;
  k.theta1 = 2.0 * spectral_norm(MatrixXd(A.transpose() * P * B));
  k.theta2 = 4.0 * spectral_norm(MatrixXd(A.transpose() * P * B * B.transpose() * P *
                                          B * B.transpose() * P * A));
  k.theta3 =
      2.0 * spectral_norm(MatrixXd(A.transpose() * P * B * B.transpose() * P * B));
  k.kappa = 4.0 + 2.0 * k.M2 + 2.0 * k.M1 * k.M1;

  const double huge = 1e6;
  // delta1: positive root of ||Q|| (2 d ||BB'PA||)^2 + 2 ||Q|| ||A-HC|| (2 d ||BB'PA||) = 1.
  {
    const double a = norm_Q * 4.0 * norm_BBtPA * norm_BBtPA;
    const double b = 4.0 * norm_Q * norm_AHC * norm_BBtPA;
    if (a > 0.0)
      k.delta1 = (-b + std::sqrt(b * b + 4.0 * a)) / (2.0 * a);
    else if (b > 0.0)
      k.delta1 = 1.0 / b;
    else
      k.delta1 = huge;
  }
  const double norm_BtPB = spectral_norm(MatrixXd(B.transpose() * P * B));
  k.delta2 = std::min(k.delta1, 0.5 / norm_BtPB);

  double dstar = k.delta2;
  if (k.theta2 * k.kappa > 0.0)
    dstar = std::min(dstar, std::cbrt(0.5 / (k.theta2 * k.kappa)));
  if (k.theta1 * k.kappa > 0.0) dstar = std::min(dstar, k.M1 / (k.theta1 * k.kappa));
  {
    const double a = k.theta3 * k.kappa;
    const double b = k.M3;
    if (a > 0.0)
      dstar = std::min(dstar, (-b + std::sqrt(b * b + 4.0 * a)) / (2.0 * a));
    else if (b > 0.0)
      dstar = std::min(dstar, 1.0 / b);
  }
  proto.delta_star = dstar;

  if (delta) {
    require(*delta > 0.0, "delta must be positive");
    if (*delta > proto.delta_star && !opts.override_gain_bound)
      fail(ErrorCode::delta_too_large,
           "delta " + std::to_string(*delta) + " exceeds delta* " +
               std::to_string(proto.delta_star));
    proto.delta = *delta;
    proto.gain_overridden = *delta > proto.delta_star;
  } else {
    proto.delta = proto.delta_star;
  }
  return proto;
}

MatrixXcd ct_full_block(const LtiModel& m, const CtFullProtocol& p, Complex lambda) {
  const MatrixXd gain = m.B * m.B.transpose() * p.P.P;
  return m.A.cast<Complex>() - (p.rho * lambda) * gain.cast<Complex>();
}

MatrixXcd ct_partial_block(const LtiModel& m, const CtPartialProtocol& p,
                           Complex lambda) {
  const CompensatedAgent ca = compose(m, p.pre);
  const Eigen::Index nt = ca.At.rows();
  const Eigen::Index nbar = p.scb.nbar;
  const Eigen::Index n1 = nt - nbar;

  const MatrixXd F = ca.Bt.transpose() * p.P.P * p.scb.S_inv;  // mv x nt
  const MatrixXd F1 = F.leftCols(n1);
  const MatrixXd F2 = F.rightCols(nbar);
  const MatrixXd T1 = p.scb.S.topRows(n1);
  const MatrixXd T2 = p.scb.S.bottomRows(nbar);

  MatrixXcd block(nt + n1, nt + n1);
  block.topLeftCorner(nt, nt) =
      ca.At.cast<Complex>() -
      (p.rho * lambda) * MatrixXd(ca.Bt * F2 * T2).cast<Complex>();
  block.topRightCorner(nt, n1) = (-p.rho) * MatrixXd(ca.Bt * F1).cast<Complex>();
  block.bottomLeftCorner(n1, nt) =
      lambda * MatrixXd(p.H * p.scb.Cbar * T1 + p.scb.A12 * T2).cast<Complex>();
  block.bottomRightCorner(n1, n1) =
      MatrixXd(p.scb.A11 - p.H * p.scb.Cbar).cast<Complex>();
  return block;
}

MatrixXcd dt_full_block(const LtiModel& m, const DtFullProtocol& p, Complex lambda) {
  const MatrixXd gain = m.B * m.B.transpose() * p.P.P * m.A;
  return m.A.cast<Complex>() -
         (p.epsilon * (Complex(1, 0) - lambda)) * gain.cast<Complex>();
}

MatrixXcd dt_partial_block(const LtiModel& m, const DtPartialProtocol& p,
                           Complex lambda) {
  const Eigen::Index n = m.state_dim();
  const MatrixXd K = m.B * m.B.transpose() * p.P.P * m.A;
  const Complex c = p.delta * (Complex(1, 0) - lambda);
  const MatrixXcd cK = c * K.cast<Complex>();
  const MatrixXd AHC = m.A - p.H * m.C;
  MatrixXcd block(2 * n, 2 * n);
  block.topLeftCorner(n, n) = m.A.cast<Complex>() - cK;
  block.topRightCorner(n, n) = cK;
  block.bottomLeftCorner(n, n) = -cK;
  block.bottomRightCorner(n, n) = AHC.cast<Complex>() + cK;
  return block;
}

MatrixXcd closed_loop_block(const LtiModel& m, const Protocol& p, Complex lambda) {
  return std::visit(
      [&](const auto& proto) -> MatrixXcd {
        using T = std::decay_t<decltype(proto)>;
        if constexpr (std::is_same_v<T, CtFullProtocol>)
          return ct_full_block(m, proto, lambda);
        else if constexpr (std::is_same_v<T, CtPartialProtocol>)
          return ct_partial_block(m, proto, lambda);
        else if constexpr (std::is_same_v<T, DtFullProtocol>)
          return dt_full_block(m, proto, lambda);
        else
          return dt_partial_block(m, proto, lambda);
      },
      p);
}

int protocol_state_dim(const LtiModel& m, const Protocol& p) {
  switch (kind_of(p)) {
    case ProtocolKind::ct_full:
    case ProtocolKind::dt_full:
      return 0;
    case ProtocolKind::dt_partial:
      return m.state_dim();
    case ProtocolKind::ct_partial: {
      const auto& proto = std::get<CtPartialProtocol>(p);
      const int nt = m.state_dim() + proto.pre.state_dim();
      return proto.pre.state_dim() + (nt - proto.scb.nbar);
    }
  }
  return 0;
}

}  // namespace synkit
