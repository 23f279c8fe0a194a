#include "synkit/structure.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "synkit/errors.hpp"

namespace synkit {

PreCompensator::PreCompensator(MatrixXd ap, MatrixXd bp, MatrixXd cp, MatrixXd dp)
    : Ap(std::move(ap)), Bp(std::move(bp)), Cp(std::move(cp)), Dp(std::move(dp)) {
  if (Ap.rows() != Ap.cols())
    fail(ErrorCode::shape_mismatch, "Ap must be square");
  const Eigen::Index q = Ap.rows();
  if (Bp.rows() != q || Cp.cols() != q)
    fail(ErrorCode::shape_mismatch, "Bp/Cp do not match the pre-compensator order");
  if (Dp.rows() != Cp.rows() && q > 0)
    fail(ErrorCode::shape_mismatch, "Cp and Dp must have the same number of rows");
  if (q > 0 && Bp.cols() != Dp.cols())
    fail(ErrorCode::shape_mismatch, "Bp and Dp must have the same number of columns");
  if (q > 0) {
    const VectorXcd ev = eigenvalues(Ap);
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i).real() >= 0.0)
        fail(ErrorCode::precondition_failed,
             "pre-compensator must be Hurwitz stable; found eigenvalue with re = " +
                 std::to_string(ev(i).real()));
  }
}

PreCompensator PreCompensator::identity(int m) {
  PreCompensator pc;
  pc.Ap = MatrixXd(0, 0);
  pc.Bp = MatrixXd(0, m);
  pc.Cp = MatrixXd(m, 0);
  pc.Dp = MatrixXd::Identity(m, m);
  return pc;
}

CompensatedAgent compose(const LtiModel& m, const PreCompensator& pc) {
  const int n = m.state_dim();
  const int q = pc.state_dim();
  const int mv = pc.input_dim();
  if (pc.output_dim() != m.input_dim())
    fail(ErrorCode::shape_mismatch,
         "pre-compensator output count must equal the agent input count");
  CompensatedAgent ca;
  ca.agent_dim = n;
  ca.pre_dim = q;
  ca.time_domain = m.time_domain;
  ca.At = MatrixXd::Zero(n + q, n + q);
  ca.At.topLeftCorner(n, n) = m.A;
  if (q > 0) {
    ca.At.topRightCorner(n, q) = m.B * pc.Cp;
    ca.At.bottomRightCorner(q, q) = pc.Ap;
  }
  ca.Bt = MatrixXd::Zero(n + q, mv);
  ca.Bt.topRows(n) = m.B * pc.Dp;
  if (q > 0) ca.Bt.bottomRows(q) = pc.Bp;
  ca.Ct = MatrixXd::Zero(m.output_dim(), n + q);
  ca.Ct.leftCols(n) = m.C;
  return ca;
}

PrecompensatorReport verify_precompensator(const LtiModel& m, const PreCompensator& pc) {
  const CompensatedAgent ca = compose(m, pc);
  const LtiModel cm = ca.to_model();
  PrecompensatorReport rep;
  std::tie(rep.stabilizable, rep.detectable) = check_stabilizable_detectable(cm);

  const int mv = pc.input_dim();
  rep.left_invertible = transfer_normal_rank(cm.A, cm.B, cm.C) == mv;

  const double scale = std::max(1.0, spectral_norm(cm.A));
  std::vector<Complex> expected = to_vector(eigenvalues(m.A));
  const auto pre_poles = to_vector(eigenvalues(pc.Ap));
  expected.insert(expected.end(), pre_poles.begin(), pre_poles.end());
  rep.poles_are_union =
      match_spectra(expected, to_vector(eigenvalues(cm.A)), 1e-8 * scale);

  const auto order_one = [](const std::vector<int>& orders) {
    return !orders.empty() &&
           std::all_of(orders.begin(), orders.end(), [](int k) { return k == 1; });
  };
  rep.infinite_zero_order_preserved =
      order_one(infinite_zero_structure(m)) == order_one(infinite_zero_structure(cm));

  rep.compensated_zeros = invariant_zeros(cm);
  std::vector<Complex> original = invariant_zeros(m);
  std::vector<Complex> added = rep.compensated_zeros;
  bool originals_present = true;
  for (const auto& z : original) {
    auto hit = std::find_if(added.begin(), added.end(), [&](const Complex& w) {
      return std::abs(w - z) < 1e-6 * (1.0 + std::abs(z));
    });
    if (hit == added.end()) {
      originals_present = false;
      break;
    }
    added.erase(hit);
  }
  rep.added_zeros = added;
  const bool ct = m.time_domain == TimeDomain::continuous;
  bool added_stable = originals_present;
  for (const auto& z : added) {
    const double margin = ct ? z.real() : std::abs(z) - 1.0;
    if (margin >= -1e-8) added_stable = false;
  }
  rep.added_zeros_stable = added_stable;
  return rep;
}

namespace {

// Canonical orthonormal basis of ker(m): QR with column pivoting on the
// orthogonal projector, signs fixed. Coordinate subspaces come out as plain
// unit vectors, so systems already in block form keep S = I.
MatrixXd canonical_kernel(const MatrixXd& m, double rtol) {
  const MatrixXd raw = kernel_basis(m, rtol);
  const Eigen::Index k = raw.cols();
  if (k == 0) return raw;
  const MatrixXd projector = raw * raw.transpose();
  Eigen::ColPivHouseholderQR<MatrixXd> qr(projector);
  MatrixXd basis = qr.householderQ() * MatrixXd::Identity(m.cols(), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index at = 0;
    basis.col(j).cwiseAbs().maxCoeff(&at);
    if (basis(at, j) < 0.0) basis.col(j) = -basis.col(j);
  }
  return basis;
}

ScbForm assemble(const CompensatedAgent& ca, MatrixXd S, std::vector<int> permutation,
                 int nbar) {
  ScbForm scb;
  scb.S = std::move(S);
  scb.S_inv = scb.S.partialPivLu().inverse();
  scb.nbar = nbar;
  scb.output_permutation = std::move(permutation);
  const Eigen::Index nt = ca.At.rows();
  const Eigen::Index n1 = nt - nbar;
  const MatrixXd blocked = scb.S * ca.At * scb.S_inv;
  scb.A11 = blocked.topLeftCorner(n1, n1);
  scb.A12 = blocked.topRightCorner(n1, nbar);
  scb.A21 = blocked.bottomLeftCorner(nbar, n1);
  scb.A22 = blocked.bottomRightCorner(nbar, nbar);
  scb.Bbar = (scb.S * ca.Bt).bottomRows(nbar);

  const Eigen::Index p = ca.Ct.rows();
  MatrixXd c_perm(p, nt);
  for (Eigen::Index k = 0; k < p; ++k)
    c_perm.row(k) = ca.Ct.row(scb.output_permutation[static_cast<size_t>(k)]);
  scb.Cbar = (c_perm * scb.S_inv).topLeftCorner(p - nbar, n1);

  if (!is_detectable(scb.A11, scb.Cbar, ca.time_domain))
    fail(ErrorCode::detectability_lost, "(A11, Cbar) is not detectable");
  validate_scb(scb, ca);
  return scb;
}

}  // namespace

ScbForm scb_decompose(const CompensatedAgent& ca) {
  const Eigen::Index nt = ca.At.rows();
  const int mv = static_cast<int>(ca.Bt.cols());
  const Eigen::Index p = ca.Ct.rows();
  if (static_cast<Eigen::Index>(mv) > p)
    fail(ErrorCode::not_left_invertible, "more inputs than outputs");

  const int normal_rank = transfer_normal_rank(ca.At, ca.Bt, ca.Ct);
  if (normal_rank < mv)
    fail(ErrorCode::not_left_invertible,
         "transfer matrix normal rank " + std::to_string(normal_rank) + " < " +
             std::to_string(mv) + " inputs");
  const MatrixXd CB = ca.Ct * ca.Bt;
  if (rank_svd(CB, 1e-9) < mv)
    fail(ErrorCode::not_uniform_rank_one,
         "rank(Ct Bt) is below the transfer normal rank; infinite zeros of order > 1");

  // Output split: the rows selected as direct channels must carry an
  // invertible CB block and every remaining row of CB must vanish.
  const double cb_scale = std::max(1.0, CB.cwiseAbs().maxCoeff());
  std::vector<int> selected, rest;
  for (Eigen::Index i = 0; i < p; ++i) {
    if (CB.row(i).cwiseAbs().maxCoeff() > 1e-9 * cb_scale)
      selected.push_back(static_cast<int>(i));
    else
      rest.push_back(static_cast<int>(i));
  }
  if (static_cast<int>(selected.size()) != mv)
    fail(ErrorCode::output_form_unreachable,
         std::to_string(selected.size()) + " outputs have a direct input path but " +
             std::to_string(mv) + " are needed; an output permutation cannot "
             "expose the block form");
  MatrixXd c_sel(mv, nt);
  for (int k = 0; k < mv; ++k) c_sel.row(k) = ca.Ct.row(selected[static_cast<size_t>(k)]);
  if (rank_svd(MatrixXd(c_sel * ca.Bt), 1e-9) < mv)
    fail(ErrorCode::output_form_unreachable, "selected output block of Ct Bt is singular");

  // z1 coordinates: orthonormal completion of the input image (kernel of Bt^T).
  const MatrixXd Z = canonical_kernel(MatrixXd(ca.Bt.transpose()), 1e-10).transpose();
  if (Z.rows() != nt - mv)
    fail(ErrorCode::numeric_failure, "input matrix is rank deficient");
  MatrixXd S(nt, nt);
  S.topRows(nt - mv) = Z;
  S.bottomRows(mv) = c_sel;

  std::vector<int> permutation = rest;
  permutation.insert(permutation.end(), selected.begin(), selected.end());
  return assemble(ca, std::move(S), std::move(permutation), mv);
}

ScbForm scb_from_state_transform(const CompensatedAgent& ca, const MatrixXd& S_inv) {
  const Eigen::Index nt = ca.At.rows();
  if (S_inv.rows() != nt || S_inv.cols() != nt)
    fail(ErrorCode::shape_mismatch, "state transform must be square of the compensated order");
  const int mv = static_cast<int>(ca.Bt.cols());
  const Eigen::Index p = ca.Ct.rows();
  const Eigen::Index n1 = nt - mv;
  const MatrixXd S = S_inv.partialPivLu().inverse();

  // Infer which outputs read the z2 coordinates directly; order them by
  // the unit coordinate they hit so the bottom block comes out as I.
  const MatrixXd cs = ca.Ct * S_inv;
  std::vector<std::pair<int, int>> selected;  // (unit coordinate, output row)
  std::vector<int> rest;
  for (Eigen::Index i = 0; i < p; ++i) {
    const double left = n1 > 0 ? cs.row(i).head(n1).cwiseAbs().maxCoeff() : 0.0;
    int unit_at = -1;
    if (left <= 1e-9) {
      for (Eigen::Index k = 0; k < mv; ++k) {
        const double v = cs(i, n1 + k);
        if (std::abs(v - 1.0) <= 1e-9) {
          unit_at = unit_at == -1 ? static_cast<int>(k) : -2;
        } else if (std::abs(v) > 1e-9) {
          unit_at = -2;
        }
      }
    }
    if (unit_at >= 0)
      selected.emplace_back(unit_at, static_cast<int>(i));
    else
      rest.push_back(static_cast<int>(i));
  }
  if (static_cast<int>(selected.size()) != mv)
    fail(ErrorCode::output_form_unreachable,
         "supplied transform does not expose an identity output block");
  std::sort(selected.begin(), selected.end());
  std::vector<int> permutation = rest;
  for (const auto& [coord, row] : selected) permutation.push_back(row);
  return assemble(ca, S, std::move(permutation), mv);
}

void validate_scb(const ScbForm& scb, const CompensatedAgent& ca, double tol) {
  const Eigen::Index nt = ca.At.rows();
  const Eigen::Index nbar = scb.nbar;
  const Eigen::Index n1 = nt - nbar;
  const Eigen::Index p = ca.Ct.rows();
  const double a_scale = std::max(1.0, spectral_norm(ca.At));

  if (scb.S.rows() != nt || scb.S_inv.rows() != nt)
    fail(ErrorCode::shape_mismatch, "transform size mismatch");
  if ((scb.S * scb.S_inv - MatrixXd::Identity(nt, nt)).cwiseAbs().maxCoeff() > 1e-8)
    fail(ErrorCode::numeric_failure, "S and S_inv are not inverses");

  MatrixXd blocked(nt, nt);
  blocked.topLeftCorner(n1, n1) = scb.A11;
  blocked.topRightCorner(n1, nbar) = scb.A12;
  blocked.bottomLeftCorner(nbar, n1) = scb.A21;
  blocked.bottomRightCorner(nbar, nbar) = scb.A22;
  if ((scb.S * ca.At * scb.S_inv - blocked).cwiseAbs().maxCoeff() > tol * a_scale)
    fail(ErrorCode::numeric_failure, "state block reassembly exceeds tolerance");

  const MatrixXd sb = scb.S * ca.Bt;
  const double b_scale = std::max(1.0, spectral_norm(ca.Bt));
  if (n1 > 0 && sb.topRows(n1).cwiseAbs().maxCoeff() > tol * b_scale)
    fail(ErrorCode::numeric_failure, "transformed input matrix has a nonzero top block");
  if ((sb.bottomRows(nbar) - scb.Bbar).cwiseAbs().maxCoeff() > tol * b_scale)
    fail(ErrorCode::numeric_failure, "Bbar mismatch");
  if (rank_svd(scb.Bbar, 1e-10) < nbar)
    fail(ErrorCode::numeric_failure, "Bbar is singular");

  if (scb.output_permutation.size() != static_cast<size_t>(p))
    fail(ErrorCode::shape_mismatch, "output permutation size mismatch");
  MatrixXd c_perm(p, nt);
  for (Eigen::Index k = 0; k < p; ++k)
    c_perm.row(k) = ca.Ct.row(scb.output_permutation[static_cast<size_t>(k)]);
  const MatrixXd cs = c_perm * scb.S_inv;
  const double c_scale = std::max(1.0, spectral_norm(ca.Ct));
  MatrixXd expected = MatrixXd::Zero(p, nt);
  expected.topLeftCorner(p - nbar, n1) = scb.Cbar;
  expected.bottomRightCorner(nbar, nbar) = MatrixXd::Identity(nbar, nbar);
  if ((cs - expected).cwiseAbs().maxCoeff() > tol * c_scale)
    fail(ErrorCode::numeric_failure, "output block pattern exceeds tolerance");
}

}  // namespace synkit
