#pragma once

#include <vector>

#include "synkit/linalg.hpp"
#include "synkit/lti.hpp"

namespace synkit {

/// Preset observer pole ladders: {-1, -1.5, -2, ...} (continuous),
/// {0, 0.1, -0.1, 0.2, -0.2, ...} (discrete, inside the unit disk).
std::vector<double> default_observer_poles(int count, TimeDomain td);

/// Observer gain H with eig(A - HC) at the preset stable locations on the
/// observable subspace; unobservable modes are left where they are and must
/// already be stable (detectability). Deterministic.
/// Throws ObserverDesignFailed.
MatrixXd place_observer_gain(const MatrixXd& A, const MatrixXd& C, TimeDomain td);

}  // namespace synkit
