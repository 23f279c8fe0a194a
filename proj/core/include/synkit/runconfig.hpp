#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "synkit/errors.hpp"
#include "synkit/serialize.hpp"

namespace synkit {

/// One reproducible scenario run. All randomness flows from `seed`.
struct RunConfig {
  std::string model_path;
  std::optional<std::string> precompensator_path;
  ProtocolKind kind = ProtocolKind::ct_full;
  std::string graph_spec;  // generator spec like "cycle(60)" or an edge-list path

  std::optional<VectorXd> din_bar;  // discrete; empty = actual in-degrees
  std::optional<double> rho, delta, epsilon;
  bool override_gain_bound = false;

  std::optional<MatrixXd> supplied_H, supplied_P, supplied_S_inv;

  double horizon = 50.0;
  double dt = 1e-3;
  int steps = 2000;
  std::uint64_t seed = 42;
  double x0_scale = 1.0;
  int record_stride = 10;

  std::string output_dir = "out";
  std::optional<std::string> protocol_path;  // consumed by simulate/sweep
};

RunConfig run_config_from_json(const Json& j);
RunConfig load_run_config(const std::string& path);

/// Resolves the output directory against SYNKIT_OUTPUT_ROOT (relative paths
/// only) and creates it.
std::string resolve_output_dir(const std::string& output_dir);

/// Exit-code contract: 0 ok, 1 infeasible/failed, 2 input error, 3 divergence.
int exit_code_for(ErrorCode code) noexcept;

int run_check(const std::string& model_path,
              const std::optional<std::string>& precompensator_path, std::ostream& out,
              bool json_output = false);
int run_synth(const RunConfig& cfg, std::ostream& out);
int run_simulate(const RunConfig& cfg, std::ostream& out);
int run_sweep(const RunConfig& cfg, std::ostream& out);
int run_batch(const std::string& batch_path, std::ostream& out);

}  // namespace synkit
