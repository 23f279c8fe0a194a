#include "synkit/runconfig.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "synkit/errors.hpp"

namespace synkit {

namespace {

ProtocolKind kind_from_string(const std::string& s) {
  if (s == "ct_full") return ProtocolKind::ct_full;
  if (s == "ct_partial") return ProtocolKind::ct_partial;
  if (s == "dt_full") return ProtocolKind::dt_full;
  if (s == "dt_partial") return ProtocolKind::dt_partial;
  fail(ErrorCode::parse_error, "unknown protocol kind: " + s);
}

DiGraph graph_from_spec(const std::string& spec) {
  if (spec.find('(') != std::string::npos) return make_graph(spec);
  return read_edge_list(spec);
}

}  // namespace

RunConfig run_config_from_json(const Json& j) {
  RunConfig cfg;
  if (!j.contains("model")) fail(ErrorCode::parse_error, "config needs a `model` path");
  cfg.model_path = j.at("model").get<std::string>();
  if (j.contains("pre_compensator"))
    cfg.precompensator_path = j.at("pre_compensator").get<std::string>();
  if (!j.contains("protocol"))
    fail(ErrorCode::parse_error, "config needs a `protocol` kind");
  cfg.kind = kind_from_string(j.at("protocol").get<std::string>());
  if (!j.contains("graph")) fail(ErrorCode::parse_error, "config needs a `graph` spec");
  cfg.graph_spec = j.at("graph").get<std::string>();

  if (j.contains("din_bar") && !j.at("din_bar").is_string()) {
    const MatrixXd column = matrix_from_json(j.at("din_bar"));
    cfg.din_bar = VectorXd(Eigen::Map<const VectorXd>(column.data(), column.size()));
  }
  if (j.contains("gains")) {
    const Json& gains = j.at("gains");
    if (gains.contains("rho")) cfg.rho = gains.at("rho").get<double>();
    if (gains.contains("delta")) cfg.delta = gains.at("delta").get<double>();
    if (gains.contains("epsilon")) cfg.epsilon = gains.at("epsilon").get<double>();
  }
  cfg.override_gain_bound = j.value("override_gain_bound", false);
  if (j.contains("supplied")) {
    const Json& sup = j.at("supplied");
    if (sup.contains("H")) cfg.supplied_H = matrix_from_json(sup.at("H"));
    if (sup.contains("P")) cfg.supplied_P = matrix_from_json(sup.at("P"));
    if (sup.contains("S_inv")) cfg.supplied_S_inv = matrix_from_json(sup.at("S_inv"));
  }
  if (j.contains("sim")) {
    const Json& sim = j.at("sim");
    cfg.horizon = sim.value("horizon", cfg.horizon);
    cfg.dt = sim.value("dt", cfg.dt);
    cfg.steps = sim.value("steps", cfg.steps);
    cfg.seed = sim.value("seed", cfg.seed);
    cfg.x0_scale = sim.value("x0_scale", cfg.x0_scale);
    cfg.record_stride = sim.value("record_stride", cfg.record_stride);
  }
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  if (j.contains("protocol_file"))
    cfg.protocol_path = j.at("protocol_file").get<std::string>();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return run_config_from_json(load_json(path));
}

std::string resolve_output_dir(const std::string& output_dir) {
  namespace fs = std::filesystem;
  fs::path dir(output_dir);
  if (const char* root = std::getenv("SYNKIT_OUTPUT_ROOT"); root && dir.is_relative())
    dir = fs::path(root) / dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::parse_error, "cannot create output dir " + dir.string());
  return dir.string();
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse_error:
    case ErrorCode::shape_mismatch:
    case ErrorCode::invalid_graph:
      return 2;
    case ErrorCode::divergence:
      return 3;
    default:
      return 1;
  }
}

namespace {

void print_report(std::ostream& out, const StructuralReport& rep) {
  const auto flag = [](bool b) { return b ? "yes" : "NO"; };
  out << "  stabilizable:          " << flag(rep.stabilizable) << '\n'
      << "  detectable:            " << flag(rep.detectable) << '\n'
      << "  neutrally stable:      " << flag(rep.neutrally_stable) << '\n'
      << "  minimum phase:         " << flag(rep.minimum_phase) << '\n'
      << "  weakly minimum phase:  " << flag(rep.weakly_minimum_phase) << '\n'
      << "  uniform rank one:      " << flag(rep.uniform_rank_one) << '\n'
      << "  left invertible:       " << flag(rep.left_invertible) << '\n';
  if (rep.relative_degree_one)
    out << "  relative degree one:   " << flag(*rep.relative_degree_one) << '\n';
  out << "  invariant zeros:       ";
  if (rep.invariant_zeros.empty()) {
    out << "none";
  } else {
    for (const auto& z : rep.invariant_zeros)
      out << '(' << z.real() << (z.imag() >= 0 ? "+" : "") << z.imag() << "i) ";
  }
  out << '\n';
}

Protocol synthesize(const RunConfig& cfg, const LtiModel& model) {
  SynthOptions opts;
  opts.supplied_H = cfg.supplied_H;
  opts.supplied_P = cfg.supplied_P;
  opts.supplied_S_inv = cfg.supplied_S_inv;
  opts.override_gain_bound = cfg.override_gain_bound;
  switch (cfg.kind) {
    case ProtocolKind::ct_full:
      return synth_ct_full(model, cfg.rho.value_or(1.0), opts);
    case ProtocolKind::ct_partial: {
      if (!cfg.precompensator_path)
        fail(ErrorCode::parse_error, "ct_partial synthesis needs a pre-compensator file");
      const PreCompensator pc = load_precompensator(*cfg.precompensator_path);
      return synth_ct_partial(model, pc, cfg.rho.value_or(1.0), opts);
    }
    case ProtocolKind::dt_full:
      return synth_dt_full(model, cfg.epsilon, opts);
    case ProtocolKind::dt_partial:
      return synth_dt_partial(model, cfg.delta, opts);
  }
  fail(ErrorCode::parse_error, "unreachable protocol kind");
}

Scenario scenario_for(const RunConfig& cfg, const LtiModel& model, Protocol protocol) {
  Scenario s;
  s.model = model;
  s.protocol = std::move(protocol);
  s.graph = graph_from_spec(cfg.graph_spec);
  if (cfg.din_bar) s.din_bar = *cfg.din_bar;
  s.x0 = seeded_initial_states(s.graph.node_count(), model.state_dim(), cfg.seed,
                               cfg.x0_scale);
  s.horizon = cfg.horizon;
  s.dt = cfg.dt;
  s.steps = cfg.steps;
  s.record_stride = cfg.record_stride;
  return s;
}

void print_sweep(std::ostream& out, const SweepReport& rep) {
  out << "sweep: " << (rep.pass ? "PASS" : "FAIL") << "  worst margin "
      << rep.worst_margin << " at lambda = " << rep.worst_lambda.real()
      << (rep.worst_lambda.imag() >= 0 ? "+" : "") << rep.worst_lambda.imag() << "i ("
      << rep.grid.size() << " grid points)\n";
}

}  // namespace

int run_check(const std::string& model_path,
              const std::optional<std::string>& precompensator_path, std::ostream& out,
              bool json_output) {
  const LtiModel model = load_model(model_path);
  const StructuralReport rep = structural_report(model);
  Json j{{"model", to_json(rep)}};

  bool ok = false;
  if (precompensator_path) {
    const PreCompensator pc = load_precompensator(*precompensator_path);
    const PrecompensatorReport pre_rep = verify_precompensator(model, pc);
    const StructuralReport comp_rep = structural_report(compose(model, pc).to_model());
    j["pre_compensator"] = to_json(pre_rep);
    j["compensated"] = to_json(comp_rep);
    ok = pre_rep.pass() && comp_rep.ct_partial_design_ok();
    if (!json_output) {
      out << "agent model:\n";
      print_report(out, rep);
      out << "compensated agent:\n";
      print_report(out, comp_rep);
      out << "pre-compensator checks: " << (pre_rep.pass() ? "pass" : "FAIL") << '\n';
      out << "partial-state design feasible: " << (ok ? "yes" : "NO") << '\n';
    }
  } else {
    const bool full_state =
        model.C.rows() == model.A.rows() &&
        model.C.isApprox(MatrixXd::Identity(model.A.rows(), model.A.rows()));
    if (model.time_domain == TimeDomain::discrete)
      ok = full_state ? rep.full_state_design_ok() : rep.dt_design_ok();
    else
      // the observer-based continuous path also needs left invertibility,
      // which a pre-compensator would otherwise provide
      ok = full_state ? rep.full_state_design_ok()
                      : rep.ct_partial_design_ok() && rep.left_invertible;
    if (!json_output) {
      out << "agent model:\n";
      print_report(out, rep);
      out << "design feasible (" << (full_state ? "full-state" : "partial-state")
          << " coupling): " << (ok ? "yes" : "NO") << '\n';
    }
  }
  j["feasible"] = ok;
  if (json_output) out << j.dump(2) << '\n';
  return ok ? 0 : 1;
}

int run_synth(const RunConfig& cfg, std::ostream& out) {
  const LtiModel model = load_model(cfg.model_path);
  const Protocol protocol = synthesize(cfg, model);
  const std::string dir = resolve_output_dir(cfg.output_dir);
  const std::string path = dir + "/protocol.json";
  save_protocol(path, model, protocol);
  out << "wrote " << path << '\n';
  if (const auto* dtf = std::get_if<DtFullProtocol>(&protocol))
    out << "epsilon* = " << dtf->epsilon_star << ", epsilon = " << dtf->epsilon << '\n';
  if (const auto* dtp = std::get_if<DtPartialProtocol>(&protocol))
    out << "delta* = " << dtp->delta_star << ", delta = " << dtp->delta << '\n';
  return 0;
}

int run_simulate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.protocol_path)
    fail(ErrorCode::parse_error, "simulate needs a protocol file (synth first)");
  auto [model, protocol] = load_protocol(*cfg.protocol_path);
  const LtiModel config_model = load_model(cfg.model_path);
  const bool same_shapes = model.A.rows() == config_model.A.rows() &&
                           model.B.cols() == config_model.B.cols() &&
                           model.C.rows() == config_model.C.rows();
  if (!same_shapes || model.time_domain != config_model.time_domain ||
      (model.A - config_model.A).cwiseAbs().maxCoeff() > 1e-12 ||
      (model.B - config_model.B).cwiseAbs().maxCoeff() > 1e-12 ||
      (model.C - config_model.C).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::shape_mismatch,
         "protocol file was synthesized for a different model");

  const bool overridden =
      std::visit([](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DtFullProtocol> ||
                      std::is_same_v<T, DtPartialProtocol>)
          return p.gain_overridden;
        else
          return false;
      }, protocol);
  if (overridden) {
    out << "gain exceeds the certified bound; running the spectral sweep first\n";
    print_sweep(out, sweep(model, protocol));
  }

  const Scenario s = scenario_for(cfg, model, protocol);
  const Trajectory tr = simulate(s);
  const SyncMetrics metrics = sync_metrics(tr);

  const std::string dir = resolve_output_dir(cfg.output_dir);
  write_trajectory_csv(dir + "/trajectory.csv", tr);
  write_sync_error_csv(dir + "/sync_error.csv", tr);
  write_error_csv(dir + "/errors.csv", tr);
  Json summary = to_json(metrics);
  summary["seed"] = cfg.seed;
  summary["graph"] = cfg.graph_spec;
  summary["protocol"] = to_string(cfg.kind);
  summary["records"] = tr.times.size();
  save_json(dir + "/summary.json", summary);

  out << "initial sync error " << metrics.initial_error << ", final "
      << metrics.final_error;
  if (metrics.time_to_threshold)
    out << ", reached " << metrics.threshold_ratio << " x initial at t = "
        << *metrics.time_to_threshold;
  out << '\n' << "wrote " << dir << "/{trajectory,sync_error,errors}.csv, summary.json\n";
  return 0;
}

int run_sweep(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.protocol_path)
    fail(ErrorCode::parse_error, "sweep needs a protocol file (synth first)");
  auto [model, protocol] = load_protocol(*cfg.protocol_path);
  const SweepReport rep = sweep(model, protocol);
  const std::string dir = resolve_output_dir(cfg.output_dir);
  save_json(dir + "/sweep.json", to_json(rep));
  print_sweep(out, rep);
  out << "wrote " << dir << "/sweep.json\n";
  return rep.pass ? 0 : 1;
}

int run_batch(const std::string& batch_path, std::ostream& out) {
  const Json batch = load_json(batch_path);
  if (!batch.contains("runs") || !batch.at("runs").is_array())
    fail(ErrorCode::parse_error, "batch config needs a `runs` array");
  int worst = 0;
  for (const Json& entry : batch.at("runs")) {
    const std::string name = entry.value("name", std::string("run"));
    RunConfig cfg = run_config_from_json(entry);
    cfg.output_dir = batch.value("output_root", std::string("out")) + "/" + name;
    out << "== " << name << " ==\n";
    int code = 0;
    try {
      code = run_synth(cfg, out);
      if (code == 0) {
        cfg.protocol_path = resolve_output_dir(cfg.output_dir) + "/protocol.json";
        code = run_simulate(cfg, out);
      }
    } catch (const Error& e) {
      out << name << ": " << e.what() << '\n';
      code = exit_code_for(e.code());
    }
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace synkit
