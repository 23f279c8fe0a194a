#pragma once

#include <vector>

#include "synkit/linalg.hpp"
#include "synkit/lti.hpp"

namespace synkit {

/// Stable pre-compensator p+ = Ap p + Bp v, u = Cp p + Dp v feeding the
/// agent input. q may be zero (static pass-through).
struct PreCompensator {
  MatrixXd Ap, Bp, Cp, Dp;

  PreCompensator() = default;
  PreCompensator(MatrixXd ap, MatrixXd bp, MatrixXd cp, MatrixXd dp);
  static PreCompensator identity(int m);

  int state_dim() const { return static_cast<int>(Ap.rows()); }
  int input_dim() const { return static_cast<int>(Dp.cols()); }   // m_v
  int output_dim() const { return static_cast<int>(Dp.rows()); }  // m
};

/// Series interconnection agent(pre-compensator): state z = (x, p).
struct CompensatedAgent {
  MatrixXd At, Bt, Ct;
  int agent_dim = 0;  // n
  int pre_dim = 0;    // q
  TimeDomain time_domain = TimeDomain::continuous;

  LtiModel to_model() const { return {At, Bt, Ct, time_domain}; }
};

CompensatedAgent compose(const LtiModel& m, const PreCompensator& pc);

/// Checks the five guaranteed properties of a stable pre-compensator on
/// the interconnection.
struct PrecompensatorReport {
  bool stabilizable = false;
  bool detectable = false;
  bool left_invertible = false;
  bool poles_are_union = false;
  bool infinite_zero_order_preserved = false;
  bool added_zeros_stable = false;
  std::vector<Complex> compensated_zeros;
  std::vector<Complex> added_zeros;
  bool pass() const {
    return stabilizable && detectable && left_invertible && poles_are_union &&
           infinite_zero_order_preserved && added_zeros_stable;
  }
};

PrecompensatorReport verify_precompensator(const LtiModel& m, const PreCompensator& pc);

/// Block coordinates exposing a nonsingular input channel:
///   S At S^{-1} = [[A11, A12], [A21, A22]],  S Bt = [0; Bbar],
///   Pi Ct S^{-1} = [[Cbar, 0], [0, I]],
/// with Bbar nonsingular, nbar = input count, and (A11, Cbar) detectable.
/// output_permutation maps new output index -> original row of Ct.
struct ScbForm {
  MatrixXd S, S_inv;
  MatrixXd A11, A12, A21, A22;
  MatrixXd Bbar, Cbar;
  int nbar = 0;
  std::vector<int> output_permutation;
};

ScbForm scb_decompose(const CompensatedAgent& ca);

/// Builds the form from a user-supplied state transformation (its inverse),
/// inferring the output permutation; validates all block invariants.
ScbForm scb_from_state_transform(const CompensatedAgent& ca, const MatrixXd& S_inv);

/// Recomputes every ScbForm invariant from scratch; throws on violation.
void validate_scb(const ScbForm& scb, const CompensatedAgent& ca, double tol = 1e-10);

}  // namespace synkit
