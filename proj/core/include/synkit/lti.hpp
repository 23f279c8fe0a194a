#pragma once

#include <optional>
#include <string>
#include <vector>

#include "synkit/linalg.hpp"

namespace synkit {

enum class TimeDomain { continuous, discrete };

const char* to_string(TimeDomain td) noexcept;

/// State-space agent model x+ = Ax + Bu, y = Cx, where x+ is the time
/// derivative (continuous) or the successor state (discrete).
struct LtiModel {
  MatrixXd A, B, C;
  TimeDomain time_domain = TimeDomain::continuous;

  LtiModel() = default;
  LtiModel(MatrixXd a, MatrixXd b, MatrixXd c, TimeDomain td);

  int state_dim() const { return static_cast<int>(A.rows()); }
  int input_dim() const { return static_cast<int>(B.cols()); }
  int output_dim() const { return static_cast<int>(C.rows()); }
  bool siso() const { return input_dim() == 1 && output_dim() == 1; }
};

/// Structural property summary driving the feasibility decisions.
struct StructuralReport {
  bool stabilizable = false;
  bool detectable = false;
  bool neutrally_stable = false;
  bool minimum_phase = false;
  bool weakly_minimum_phase = false;
  bool uniform_rank_one = false;
  std::optional<bool> relative_degree_one;  // SISO only
  bool left_invertible = false;
  std::vector<Complex> invariant_zeros;
  std::vector<int> infinite_zero_orders;
  int normal_rank = 0;

  /// Full-state coupling design needs stabilizability + neutral stability.
  bool full_state_design_ok() const { return stabilizable && neutrally_stable; }
  /// Continuous partial-state design list (checked on the compensated agent).
  bool ct_partial_design_ok() const {
    return stabilizable && detectable && neutrally_stable && minimum_phase &&
           uniform_rank_one;
  }
  /// Discrete design list.
  bool dt_design_ok() const { return stabilizable && detectable && neutrally_stable; }
  /// SISO necessary-condition lists.
  bool ct_siso_necessary_ok() const {
    return stabilizable && detectable && neutrally_stable && weakly_minimum_phase &&
           relative_degree_one.value_or(false);
  }
  bool dt_siso_necessary_ok() const { return dt_design_ok(); }
};

/// PBH tests over the closed unstable region of the model's time domain.
std::pair<bool, bool> check_stabilizable_detectable(const LtiModel& m);
bool is_stabilizable(const MatrixXd& A, const MatrixXd& B, TimeDomain td);
bool is_detectable(const MatrixXd& A, const MatrixXd& C, TimeDomain td);

/// All eigenvalues in the closed stability region and every boundary
/// eigenvalue semi-simple.
bool check_neutrally_stable(const LtiModel& m);
bool is_neutrally_stable(const MatrixXd& A, TimeDomain td);

/// Finite Rosenbrock rank-drop points. Deterministic; verified against the
/// pencil rank at every returned value.
std::vector<Complex> invariant_zeros(const LtiModel& m);
std::vector<Complex> invariant_zeros(const MatrixXd& A, const MatrixXd& B,
                                     const MatrixXd& C);

/// Infinite-zero orders as far as this toolkit resolves them: the exact
/// order list for SISO models, r copies of 1 when rank(CB) equals the
/// transfer normal rank r, empty otherwise (reported as not uniform rank 1).
std::vector<int> infinite_zero_structure(const LtiModel& m);

/// Max rank of C (sI - A)^{-1} B over two independent sample sets on a
/// circle strictly outside the spectrum.
int transfer_normal_rank(const MatrixXd& A, const MatrixXd& B, const MatrixXd& C);

StructuralReport structural_report(const LtiModel& m);

}  // namespace synkit
