#pragma once

// Shared example systems used across the unit and acceptance suites.

#include "synkit/lti.hpp"
#include "synkit/structure.hpp"

namespace synkit::fixtures {

// Continuous-time example agent: three states, full input authority,
// two measured outputs.
inline LtiModel ct_agent() {
  MatrixXd A(3, 3), B(3, 3), C(2, 3);
  A << 0, 1, 1, -1, 0, 1, 0, 0, 0;
  B = MatrixXd::Identity(3, 3);
  C << 1, 0, 0, 0, 1, 0;
  return {A, B, C, TimeDomain::continuous};
}

inline LtiModel ct_agent_full_state() {
  LtiModel m = ct_agent();
  m.C = MatrixXd::Identity(3, 3);
  return m;
}

// First-order stable pre-compensator making the continuous agent
// left invertible (single drive input).
inline PreCompensator ct_precompensator() {
  MatrixXd Ap(1, 1), Bp(1, 1), Cp(3, 1), Dp(3, 1);
  Ap << -2;
  Bp << 1;
  Cp << 0, 0, 1;
  Dp << 0, 1, 0;
  return {Ap, Bp, Cp, Dp};
}

// Reference certificate for the compensated continuous agent.
inline MatrixXd ct_reference_P() {
  MatrixXd P(4, 4);
  P << 1, 0, -1, -0.6,
       0, 1, 1, 0.2,
      -1, 1, 3, 1.3,
      -0.6, 0.2, 1.3, 2;
  return P;
}

// Reference state transformation (inverse) for the compensated agent.
inline MatrixXd ct_reference_S_inv() {
  MatrixXd S_inv(4, 4);
  S_inv << 1, 0, 0, 0,
           0, 0, 0, 1,
           0, 0, 1, 0,
           0, -1, 0, 1;
  return S_inv;
}

inline MatrixXd ct_reference_H() {
  MatrixXd H(3, 1);
  H << 1, 0, 1;
  return H;
}

// Discrete-time example agent: single input, single measured state.
inline LtiModel dt_agent() {
  MatrixXd A(3, 3), B(3, 1), C(1, 3);
  A << 0, 1, 1, -1, 0, 1, 0, 0, 1;
  B << 0, 0, 1;
  C << 1, 0, 0;
  return {A, B, C, TimeDomain::discrete};
}

inline LtiModel dt_agent_full_state() {
  LtiModel m = dt_agent();
  m.C = MatrixXd::Identity(3, 3);
  return m;
}

inline MatrixXd dt_reference_P() {
  MatrixXd P(3, 3);
  P << 1, 0, -1,
       0, 1, 0,
      -1, 0, 2;
  return P;
}

inline MatrixXd dt_reference_H() {
  MatrixXd H(3, 1);
  H << 0.5, -0.5, 0.4;
  return H;
}

}  // namespace synkit::fixtures
