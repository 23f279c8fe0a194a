#pragma once

#include <optional>
#include <variant>

#include "synkit/linalg.hpp"
#include "synkit/lti.hpp"
#include "synkit/lyapunov.hpp"
#include "synkit/structure.hpp"

namespace synkit {

enum class ProtocolKind { ct_full, ct_partial, dt_full, dt_partial };

const char* to_string(ProtocolKind kind) noexcept;

/// u_i = -rho B^T P zeta_i on relative full states.
struct CtFullProtocol {
  Certificate P;
  double rho = 1.0;
};

/// Pre-compensated observer protocol on relative outputs:
///   zhat+ = (A11 - H Cbar) zhat + [H, A12] (permuted zeta)
///   v_i   = -rho Bt^T P S^{-1} [zhat; zeta_2]
/// routed through the pre-compensator.
struct CtPartialProtocol {
  PreCompensator pre;
  ScbForm scb;
  Certificate P;  // over the compensated state
  MatrixXd H;
  double rho = 1.0;
};

/// u_i(t) = -epsilon B^T P A zeta_i(t), epsilon in (0, epsilon_star].
struct DtFullProtocol {
  Certificate P;
  double epsilon = 0.0;
  double epsilon_star = 0.0;
  bool gain_overridden = false;
};

/// Gain-bound constants of the observer-based discrete protocol.
struct DtGainConstants {
  double M1 = 0, M2 = 0, M3 = 0;
  double theta1 = 0, theta2 = 0, theta3 = 0;
  double kappa = 0;
  double delta1 = 0, delta2 = 0;
  bool m1_floored = false;
};

/// chi_i+ = (A - HC) chi_i + H zeta_i, u_i = -delta B^T P A chi_i.
struct DtPartialProtocol {
  MatrixXd H;
  Certificate P;
  Certificate Q;
  double delta = 0.0;
  double delta_star = 0.0;
  DtGainConstants constants;
  bool gain_overridden = false;
};

using Protocol =
    std::variant<CtFullProtocol, CtPartialProtocol, DtFullProtocol, DtPartialProtocol>;

ProtocolKind kind_of(const Protocol& p);

/// Optional fixture inputs: a certificate/gain supplied instead of the
/// constructed ones (validated), and permission to exceed certified bounds.
struct SynthOptions {
  std::optional<MatrixXd> supplied_P;
  std::optional<MatrixXd> supplied_H;
  std::optional<MatrixXd> supplied_S_inv;  // ct_partial only
  bool override_gain_bound = false;
};

CtFullProtocol synth_ct_full(const LtiModel& m, double rho = 1.0,
                             const SynthOptions& opts = {});

CtPartialProtocol synth_ct_partial(const LtiModel& m, const PreCompensator& pc,
                                   double rho = 1.0, const SynthOptions& opts = {});

DtFullProtocol synth_dt_full(const LtiModel& m,
                             std::optional<double> epsilon = std::nullopt,
                             const SynthOptions& opts = {});

DtPartialProtocol synth_dt_partial(const LtiModel& m,
                                   std::optional<double> delta = std::nullopt,
                                   const SynthOptions& opts = {});

/// Closed-loop matrices of the network-decoupled modes; lambda ranges over
/// the nonzero Laplacian spectrum (continuous) or the non-unit row-stochastic
/// spectrum (discrete).
MatrixXcd ct_full_block(const LtiModel& m, const CtFullProtocol& p, Complex lambda);
MatrixXcd ct_partial_block(const LtiModel& m, const CtPartialProtocol& p, Complex lambda);
MatrixXcd dt_full_block(const LtiModel& m, const DtFullProtocol& p, Complex lambda);
MatrixXcd dt_partial_block(const LtiModel& m, const DtPartialProtocol& p, Complex lambda);

MatrixXcd closed_loop_block(const LtiModel& m, const Protocol& p, Complex lambda);

/// Number of per-agent protocol states carried in simulation.
int protocol_state_dim(const LtiModel& m, const Protocol& p);

}  // namespace synkit
