#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "synkit/graph.hpp"
#include "synkit/protocol.hpp"

namespace synkit {

/// One closed-loop run: N copies of the model under a protocol on a graph.
struct Scenario {
  LtiModel model;
  Protocol protocol;
  DiGraph graph = DiGraph::cycle(1);
  VectorXd din_bar;       // discrete coupling bounds; empty = actual in-degrees
  MatrixXd x0;            // N x n agent initial states
  MatrixXd protocol_x0;   // N x protocol_state_dim; empty = zeros
  double horizon = 50.0;  // continuous: final time
  double dt = 1e-3;       // continuous: integrator step
  int steps = 2000;       // discrete: step count
  int record_stride = 10;
  double divergence_threshold = 1e12;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<MatrixXd> states;           // per record: N x n
  std::vector<MatrixXd> protocol_states;  // per record: N x nc
  std::vector<double> sync_error;         // max pairwise state distance
};

/// Fixed-step classical 4th-order integration (continuous) or the exact
/// difference equations (discrete). Deterministic. Throws Divergence when
/// the sync error exceeds the scenario threshold or states leave the
/// finite range.
Trajectory simulate(const Scenario& s);

/// Per-mode closed-loop block and its spectrum.
struct ModeBlock {
  Complex lambda;
  MatrixXcd block;
  std::vector<Complex> spectrum;
};

struct DecoupledModes {
  std::vector<ModeBlock> blocks;
  std::vector<Complex> synchronized_modes;  // open-loop agent (+ observer) spectrum
};

/// Decoupled modal blocks per nonzero Laplacian eigenvalue (continuous) or
/// non-unit row-stochastic eigenvalue (discrete). Asserts that the union of
/// block spectra plus the synchronized modes equals the stacked closed-loop
/// spectrum; throws SpectrumMismatch otherwise.
DecoupledModes decoupled_oracle(const Scenario& s);

/// Dense stacked closed-loop matrix (state derivative map or one-step map).
MatrixXd closed_loop_matrix(const Scenario& s);

struct SyncMetrics {
  double initial_error = 0.0;
  double final_error = 0.0;
  double threshold_ratio = 1e-6;
  std::optional<double> time_to_threshold;  // first recorded time below ratio*initial
};

SyncMetrics sync_metrics(const Trajectory& tr, double threshold_ratio = 1e-6);

/// Seeded standard-normal initial agent states.
MatrixXd seeded_initial_states(int agents, int state_dim, std::uint64_t seed,
                               double scale = 1.0);

/// Plot-data contract: `t, agent, state_index, value` rows.
void write_trajectory_csv(const std::string& path, const Trajectory& tr);
/// `t, sync_error` rows.
void write_sync_error_csv(const std::string& path, const Trajectory& tr);
/// Per-agent error against agent 1: `t, agent, state_index, value`.
void write_error_csv(const std::string& path, const Trajectory& tr);

}  // namespace synkit
