#include "synkit/netsim.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "synkit/errors.hpp"

namespace synkit {

namespace {

MatrixXd coupling_for(const Scenario& s) {
  if (s.model.time_domain == TimeDomain::continuous) return laplacian(s.graph).L;
  const VectorXd din = s.din_bar.size() ? s.din_bar : VectorXd(s.graph.in_degrees());
  const RowStochastic rs = row_stochastic(s.graph, din);
  const Eigen::Index n = rs.D.rows();
  return MatrixXd::Identity(n, n) - rs.D;
}

void check_scenario(const Scenario& s) {
  const int N = s.graph.node_count();
  if (!s.graph.has_spanning_tree())
    fail(ErrorCode::invalid_graph, "scenario graph has no directed spanning tree");
  const bool ct = s.model.time_domain == TimeDomain::continuous;
  const ProtocolKind kind = kind_of(s.protocol);
  const bool proto_ct =
      kind == ProtocolKind::ct_full || kind == ProtocolKind::ct_partial;
  if (ct != proto_ct)
    fail(ErrorCode::shape_mismatch, "protocol kind does not match the model time domain");
  if ((kind == ProtocolKind::ct_full || kind == ProtocolKind::dt_full) &&
      !(s.model.C.rows() == s.model.A.rows() &&
        s.model.C.isApprox(MatrixXd::Identity(s.model.A.rows(), s.model.A.rows()))))
    fail(ErrorCode::precondition_failed, "full-state coupling requires C = I");
  if (s.x0.rows() != N || s.x0.cols() != s.model.state_dim())
    fail(ErrorCode::shape_mismatch, "x0 must be N x n");
  const int nc = protocol_state_dim(s.model, s.protocol);
  if (s.protocol_x0.size() != 0 &&
      (s.protocol_x0.rows() != N || s.protocol_x0.cols() != nc))
    fail(ErrorCode::shape_mismatch, "protocol_x0 must be N x protocol-state-dim");
  if (ct && !(s.dt > 0.0)) fail(ErrorCode::shape_mismatch, "dt must be positive");
  if (ct && !(s.horizon > 0.0)) fail(ErrorCode::shape_mismatch, "horizon must be positive");
  if (!ct && s.steps < 1) fail(ErrorCode::shape_mismatch, "steps must be positive");
  if (s.record_stride < 1) fail(ErrorCode::shape_mismatch, "record_stride must be >= 1");
}

double max_pairwise_distance(const Eigen::Ref<const MatrixXd>& states) {
  const Eigen::Index N = states.rows();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = i + 1; j < N; ++j)
      worst = std::max(worst, (states.row(i) - states.row(j)).norm());
  return worst;
}

// Precomputed row-form update matrices on the stacked per-agent layout
// Y = [X | protocol columns].
struct Dynamics {
  int n = 0, nc = 0;
  MatrixXd coupling;  // L (continuous) or I - D (discrete)
  MatrixXd AT;        // A^T

  // full-state variants: correction = (coupling * Y) * KT
  MatrixXd KT;

  // ct_partial
  MatrixXd CoutT;  // C^T
  MatrixXd F1T, F2T, DpBT, CpBT, ApT, BpT, ObsT, HT, A12T;
  std::vector<int> perm;
  int p = 0, nbar = 0, q = 0, n1 = 0;
  double rho = 1.0;

  // dt_partial
  MatrixXd UT;     // delta A^T P B  (u_i row form factor)
  MatrixXd BT;     // B^T
  MatrixXd AHC_T;  // (A - HC)^T
};

Dynamics build_dynamics(const Scenario& s) {
  Dynamics d;
  d.n = s.model.state_dim();
  d.nc = protocol_state_dim(s.model, s.protocol);
  d.coupling = coupling_for(s);
  d.AT = s.model.A.transpose();
  switch (kind_of(s.protocol)) {
    case ProtocolKind::ct_full: {
      const auto& p = std::get<CtFullProtocol>(s.protocol);
      d.KT = p.rho * p.P.P * s.model.B * s.model.B.transpose();
      break;
    }
    case ProtocolKind::dt_full: {
      const auto& p = std::get<DtFullProtocol>(s.protocol);
      d.KT = p.epsilon * s.model.A.transpose() * p.P.P * s.model.B *
             s.model.B.transpose();
      break;
    }
    case ProtocolKind::dt_partial: {
      const auto& p = std::get<DtPartialProtocol>(s.protocol);
      d.p = s.model.output_dim();
      d.CoutT = s.model.C.transpose();
      d.UT = p.delta * s.model.A.transpose() * p.P.P * s.model.B;
      d.BT = s.model.B.transpose();
      d.AHC_T = (s.model.A - p.H * s.model.C).transpose();
      d.HT = p.H.transpose();
      break;
    }
    case ProtocolKind::ct_partial: {
      const auto& p = std::get<CtPartialProtocol>(s.protocol);
      const CompensatedAgent ca = compose(s.model, p.pre);
      const Eigen::Index nt = ca.At.rows();
      d.q = p.pre.state_dim();
      d.nbar = p.scb.nbar;
      d.n1 = static_cast<int>(nt) - d.nbar;
      d.p = s.model.output_dim();
      d.rho = p.rho;
      d.perm = p.scb.output_permutation;
      d.CoutT = s.model.C.transpose();
      const MatrixXd F = ca.Bt.transpose() * p.P.P * p.scb.S_inv;  // mv x nt
      d.F1T = F.leftCols(d.n1).transpose();                        // n1 x mv
      d.F2T = F.rightCols(d.nbar).transpose();                     // nbar x mv
      d.DpBT = (s.model.B * p.pre.Dp).transpose();                 // mv x n
      d.CpBT = (s.model.B * p.pre.Cp).transpose();                 // q x n
      d.ApT = p.pre.Ap.transpose();
      d.BpT = p.pre.Bp.transpose();
      d.ObsT = (p.scb.A11 - p.H * p.scb.Cbar).transpose();
      d.HT = p.H.transpose();
      d.A12T = p.scb.A12.transpose();
      break;
    }
  }
  return d;
}

MatrixXd ct_derivative(const Dynamics& d, const MatrixXd& Y) {
  const Eigen::Index N = Y.rows();
  MatrixXd out(N, Y.cols());
  if (d.nc == 0) {
    out.noalias() = Y * d.AT;
    out.noalias() -= (d.coupling * Y) * d.KT;
    return out;
  }
  const auto X = Y.leftCols(d.n);
  const auto Pp = Y.middleCols(d.n, d.q);
  const auto Zh = Y.rightCols(d.n1);
  const MatrixXd Zeta = d.coupling * (X * d.CoutT);  // N x p
  MatrixXd Z1(N, d.p - d.nbar), Z2(N, d.nbar);
  for (int k = 0; k < d.p - d.nbar; ++k)
    Z1.col(k) = Zeta.col(d.perm[static_cast<size_t>(k)]);
  for (int k = 0; k < d.nbar; ++k)
    Z2.col(k) = Zeta.col(d.perm[static_cast<size_t>(d.p - d.nbar + k)]);
  const MatrixXd V = -d.rho * (Zh * d.F1T + Z2 * d.F2T);  // N x mv
  out.leftCols(d.n).noalias() = X * d.AT;
  out.leftCols(d.n).noalias() += Pp * d.CpBT;
  out.leftCols(d.n).noalias() += V * d.DpBT;
  out.middleCols(d.n, d.q).noalias() = Pp * d.ApT;
  out.middleCols(d.n, d.q).noalias() += V * d.BpT;
  out.rightCols(d.n1).noalias() = Zh * d.ObsT;
  out.rightCols(d.n1).noalias() += Z1 * d.HT;
  out.rightCols(d.n1).noalias() += Z2 * d.A12T;
  return out;
}

MatrixXd dt_step(const Dynamics& d, const MatrixXd& Y) {
  const Eigen::Index N = Y.rows();
  MatrixXd out(N, Y.cols());
  if (d.nc == 0) {
    out.noalias() = Y * d.AT;
    out.noalias() -= (d.coupling * Y) * d.KT;
    return out;
  }
  const auto X = Y.leftCols(d.n);
  const auto Chi = Y.rightCols(d.n);
  const MatrixXd Zeta = d.coupling * (X * d.CoutT);  // N x p
  out.leftCols(d.n).noalias() = X * d.AT;
  out.leftCols(d.n).noalias() -= (Chi * d.UT) * d.BT;
  out.rightCols(d.n).noalias() = Chi * d.AHC_T;
  out.rightCols(d.n).noalias() += Zeta * d.HT;
  return out;
}

}  // namespace

Trajectory simulate(const Scenario& s) {
  check_scenario(s);
  const Dynamics dyn = build_dynamics(s);
  const int N = s.graph.node_count();
  const bool ct = s.model.time_domain == TimeDomain::continuous;
  const long long steps =
      ct ? std::llround(s.horizon / s.dt) : static_cast<long long>(s.steps);

  MatrixXd Y(N, dyn.n + dyn.nc);
  Y.leftCols(dyn.n) = s.x0;
  if (dyn.nc > 0) {
    if (s.protocol_x0.size() != 0)
      Y.rightCols(dyn.nc) = s.protocol_x0;
    else
      Y.rightCols(dyn.nc).setZero();
  }

  Trajectory tr;
  const auto record = [&](long long step) {
    const double t = ct ? step * s.dt : static_cast<double>(step);
    tr.times.push_back(t);
    tr.states.push_back(Y.leftCols(dyn.n));
    tr.protocol_states.push_back(Y.rightCols(dyn.nc));
    const double err = max_pairwise_distance(Y.leftCols(dyn.n));
    tr.sync_error.push_back(err);
    if (!std::isfinite(err) || err > s.divergence_threshold)
      fail(ErrorCode::divergence,
           "sync error " + std::to_string(err) + " at t = " + std::to_string(t));
  };

  record(0);
  for (long long step = 1; step <= steps; ++step) {
    if (ct) {
      const double h = s.dt;
      const MatrixXd k1 = ct_derivative(dyn, Y);
      const MatrixXd k2 = ct_derivative(dyn, MatrixXd(Y + (0.5 * h) * k1));
      const MatrixXd k3 = ct_derivative(dyn, MatrixXd(Y + (0.5 * h) * k2));
      const MatrixXd k4 = ct_derivative(dyn, MatrixXd(Y + h * k3));
      Y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } else {
      Y = dt_step(dyn, Y);
    }
    if (step % s.record_stride == 0 || step == steps) record(step);
  }
  return tr;
}

MatrixXd closed_loop_matrix(const Scenario& s) {
  check_scenario(s);
  const Dynamics dyn = build_dynamics(s);
  const int N = s.graph.node_count();
  const MatrixXd identity = MatrixXd::Identity(N, N);
  switch (kind_of(s.protocol)) {
    case ProtocolKind::ct_full:
    case ProtocolKind::dt_full:
      return kron(identity, dyn.AT.transpose()) - kron(dyn.coupling, dyn.KT.transpose());
    case ProtocolKind::dt_partial: {
      const auto& p = std::get<DtPartialProtocol>(s.protocol);
      const int n = dyn.n;
      const MatrixXd K = s.model.B * dyn.UT.transpose();  // delta B B^T P A
      MatrixXd m(2 * N * n, 2 * N * n);
      m.topLeftCorner(N * n, N * n) = kron(identity, s.model.A);
      m.topRightCorner(N * n, N * n) = -kron(identity, K);
      m.bottomLeftCorner(N * n, N * n) = kron(dyn.coupling, MatrixXd(p.H * s.model.C));
      m.bottomRightCorner(N * n, N * n) =
          kron(identity, MatrixXd(s.model.A - p.H * s.model.C));
      return m;
    }
    case ProtocolKind::ct_partial: {
      const auto& p = std::get<CtPartialProtocol>(s.protocol);
      const CompensatedAgent ca = compose(s.model, p.pre);
      const int nt = static_cast<int>(ca.At.rows());
      const int n1 = dyn.n1;
      const MatrixXd F = ca.Bt.transpose() * p.P.P * p.scb.S_inv;
      const MatrixXd F1 = F.leftCols(n1);
      const MatrixXd F2 = F.rightCols(dyn.nbar);
      const MatrixXd T1 = p.scb.S.topRows(n1);
      const MatrixXd T2 = p.scb.S.bottomRows(dyn.nbar);
      MatrixXd m(N * (nt + n1), N * (nt + n1));
      m.topLeftCorner(N * nt, N * nt) =
          kron(identity, ca.At) - p.rho * kron(dyn.coupling, MatrixXd(ca.Bt * F2 * T2));
      m.topRightCorner(N * nt, N * n1) = -p.rho * kron(identity, MatrixXd(ca.Bt * F1));
      m.bottomLeftCorner(N * n1, N * nt) =
          kron(dyn.coupling, MatrixXd(p.H * p.scb.Cbar * T1 + p.scb.A12 * T2));
      m.bottomRightCorner(N * n1, N * n1) =
          kron(identity, MatrixXd(p.scb.A11 - p.H * p.scb.Cbar));
      return m;
    }
  }
  fail(ErrorCode::shape_mismatch, "unreachable protocol kind");
}

DecoupledModes decoupled_oracle(const Scenario& s) {
  check_scenario(s);
  const bool ct = s.model.time_domain == TimeDomain::continuous;
  std::vector<Complex> lambdas;
  if (ct) {
    lambdas = nonzero_spectrum(laplacian(s.graph));
  } else {
    const VectorXd din = s.din_bar.size() ? s.din_bar : VectorXd(s.graph.in_degrees());
    lambdas = nonunit_spectrum(row_stochastic(s.graph, din));
  }

  DecoupledModes modes;
  for (const auto& lam : lambdas) {
    ModeBlock mb;
    mb.lambda = lam;
    mb.block = closed_loop_block(s.model, s.protocol, lam);
    mb.spectrum = to_vector(eigenvalues(mb.block));
    modes.blocks.push_back(std::move(mb));
  }

  modes.synchronized_modes = to_vector(eigenvalues(s.model.A));
  switch (kind_of(s.protocol)) {
    case ProtocolKind::ct_partial: {
      const auto& p = std::get<CtPartialProtocol>(s.protocol);
      const CompensatedAgent ca = compose(s.model, p.pre);
      modes.synchronized_modes = to_vector(eigenvalues(ca.At));
      const auto obs =
          to_vector(eigenvalues(MatrixXd(p.scb.A11 - p.H * p.scb.Cbar)));
      modes.synchronized_modes.insert(modes.synchronized_modes.end(), obs.begin(),
                                      obs.end());
      break;
    }
    case ProtocolKind::dt_partial: {
      const auto& p = std::get<DtPartialProtocol>(s.protocol);
      const auto obs = to_vector(eigenvalues(MatrixXd(s.model.A - p.H * s.model.C)));
      modes.synchronized_modes.insert(modes.synchronized_modes.end(), obs.begin(),
                                      obs.end());
      break;
    }
    default:
      break;
  }

  std::vector<Complex> expected = modes.synchronized_modes;
  for (const auto& mb : modes.blocks)
    expected.insert(expected.end(), mb.spectrum.begin(), mb.spectrum.end());

  const MatrixXd stacked = closed_loop_matrix(s);
  const std::vector<Complex> actual = to_vector(eigenvalues(stacked));
  const double tol = 1e-6 * std::max(1.0, spectral_norm(stacked));
  if (!match_spectra(expected, actual, tol))
    fail(ErrorCode::spectrum_mismatch,
         "decoupled block spectra do not reproduce the stacked closed-loop spectrum");
  return modes;
}

SyncMetrics sync_metrics(const Trajectory& tr, double threshold_ratio) {
  if (tr.times.empty())
    fail(ErrorCode::shape_mismatch, "metrics need a nonempty trajectory");
  SyncMetrics m;
  m.initial_error = tr.sync_error.front();
  m.final_error = tr.sync_error.back();
  m.threshold_ratio = threshold_ratio;
  const double cut = threshold_ratio * m.initial_error;
  for (size_t i = 0; i < tr.times.size(); ++i) {
    if (tr.sync_error[i] <= cut) {
      m.time_to_threshold = tr.times[i];
      break;
    }
  }
  return m;
}

MatrixXd seeded_initial_states(int agents, int state_dim, std::uint64_t seed,
                               double scale) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  MatrixXd x0(agents, state_dim);
  for (int i = 0; i < agents; ++i)
    for (int j = 0; j < state_dim; ++j) x0(i, j) = scale * gauss(rng);
  return x0;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::parse_error, "cannot open output file: " + path);
  return out;
}

void write_wide_rows(std::ofstream& out, const Trajectory& tr,
                     const std::vector<MatrixXd>& values, bool relative_to_first) {
  char buf[64];
  for (size_t k = 0; k < tr.times.size(); ++k) {
    const MatrixXd& m = values[k];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (relative_to_first && i == 0) continue;
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double v = relative_to_first ? m(i, j) - m(0, j) : m(i, j);
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << tr.times[k] << ',' << (i + 1) << ',' << (j + 1) << ',' << buf << '\n';
      }
    }
  }
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
  auto out = open_out(path);
  out << "t,agent,state_index,value\n";
  write_wide_rows(out, tr, tr.states, false);
}

void write_sync_error_csv(const std::string& path, const Trajectory& tr) {
  auto out = open_out(path);
  out << "t,sync_error\n";
  char buf[64];
  for (size_t k = 0; k < tr.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", tr.sync_error[k]);
    out << tr.times[k] << ',' << buf << '\n';
  }
}

void write_error_csv(const std::string& path, const Trajectory& tr) {
  auto out = open_out(path);
  out << "t,agent,state_index,value\n";
  write_wide_rows(out, tr, tr.states, true);
}

}  // namespace synkit
