#include "synkit/lti.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "synkit/errors.hpp"

namespace synkit {

const char* to_string(TimeDomain td) noexcept {
  return td == TimeDomain::continuous ? "continuous" : "discrete";
}

LtiModel::LtiModel(MatrixXd a, MatrixXd b, MatrixXd c, TimeDomain td)
    : A(std::move(a)), B(std::move(b)), C(std::move(c)), time_domain(td) {
  if (A.rows() != A.cols()) fail(ErrorCode::shape_mismatch, "A must be square");
  if (A.rows() < 1) fail(ErrorCode::shape_mismatch, "A must be nonempty");
  if (B.rows() != A.rows()) fail(ErrorCode::shape_mismatch, "B must have n rows");
  if (C.cols() != A.rows()) fail(ErrorCode::shape_mismatch, "C must have n columns");
  if (B.cols() < 1 || C.rows() < 1)
    fail(ErrorCode::shape_mismatch, "B and C must be nonempty");
}

namespace {

struct EigCluster {
  Complex rep;
  int algebraic = 0;
};

// Groups eigenvalues within an absolute distance tolerance.
std::vector<EigCluster> cluster(const std::vector<Complex>& vals, double tol) {
  std::vector<EigCluster> out;
  std::vector<char> used(vals.size(), 0);
  for (size_t i = 0; i < vals.size(); ++i) {
    if (used[i]) continue;
    EigCluster c{vals[i], 1};
    used[i] = 1;
    Complex sum = vals[i];
    bool grew = true;
    while (grew) {
      grew = false;
      for (size_t j = 0; j < vals.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(vals[j] - c.rep) < tol) {
          used[j] = 1;
          ++c.algebraic;
          sum += vals[j];
          c.rep = sum / static_cast<double>(c.algebraic);
          grew = true;
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

bool in_open_unstable_region(Complex lam, TimeDomain td, double tol) {
  if (td == TimeDomain::continuous) return lam.real() > tol;
  return std::abs(lam) > 1.0 + tol;
}

bool on_boundary(Complex lam, TimeDomain td, double tol) {
  if (td == TimeDomain::continuous) return std::abs(lam.real()) <= tol;
  return std::abs(std::abs(lam) - 1.0) <= tol;
}

int geometric_multiplicity(const MatrixXd& A, Complex lam, double sv_tol) {
  const Eigen::Index n = A.rows();
  MatrixXcd shifted = A.cast<Complex>();
  shifted.diagonal().array() -= lam;
  auto sv = shifted.jacobiSvd().singularValues();
  int defect = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (sv(i) < sv_tol) ++defect;
  return defect;
}

bool pbh_full_rank(const MatrixXd& A, const MatrixXd& B, Complex lam) {
  const Eigen::Index n = A.rows();
  MatrixXcd pencil(n, n + B.cols());
  pencil.leftCols(n) = A.cast<Complex>();
  pencil.leftCols(n).diagonal().array() -= lam;
  pencil.rightCols(B.cols()) = B.cast<Complex>();
  return rank_svd(pencil, 1e-10) == static_cast<int>(n);
}

}  // namespace

bool is_stabilizable(const MatrixXd& A, const MatrixXd& B, TimeDomain td) {
  const double scale = std::max(1.0, spectral_norm(A));
  const double tol = 1e-8 * scale;
  const auto ev = to_vector(eigenvalues(A));
  for (const auto& c : cluster(ev, 1e-7 * scale)) {
    const bool bad = td == TimeDomain::continuous ? c.rep.real() >= -tol
                                                  : std::abs(c.rep) >= 1.0 - 1e-8;
    if (bad && !pbh_full_rank(A, B, c.rep)) return false;
  }
  return true;
}

bool is_detectable(const MatrixXd& A, const MatrixXd& C, TimeDomain td) {
  return is_stabilizable(A.transpose(), C.transpose(), td);
}

std::pair<bool, bool> check_stabilizable_detectable(const LtiModel& m) {
  return {is_stabilizable(m.A, m.B, m.time_domain),
          is_detectable(m.A, m.C, m.time_domain)};
}

bool is_neutrally_stable(const MatrixXd& A, TimeDomain td) {
  const double scale = std::max(1.0, spectral_norm(A));
  const double bnd_tol = td == TimeDomain::continuous ? 1e-8 * scale : 1e-8;
  const auto ev = to_vector(eigenvalues(A));
  for (const auto& lam : ev)
    if (in_open_unstable_region(lam, td, bnd_tol)) return false;
  for (const auto& c : cluster(ev, 1e-7 * scale)) {
    if (!on_boundary(c.rep, td, bnd_tol)) continue;
    if (geometric_multiplicity(A, c.rep, 1e-7 * scale) != c.algebraic) return false;
  }
  return true;
}

bool check_neutrally_stable(const LtiModel& m) {
  return is_neutrally_stable(m.A, m.time_domain);
}

int transfer_normal_rank(const MatrixXd& A, const MatrixXd& B, const MatrixXd& C) {
  // Sample on |s| = 2||A|| + 1: always outside the spectrum, so the
  // resolvent is well conditioned. Two independent angle sets.
  const double radius = 2.0 * spectral_norm(A) + 1.0;
  int r = 0;
  for (int set = 0; set < 2; ++set) {
    for (int k = 0; k < 8; ++k) {
      const double angle = 0.31 + set * 0.137 + k * 0.71239;
      const Complex s = radius * Complex(std::cos(angle), std::sin(angle));
      MatrixXcd resolvent = -A.cast<Complex>();
      resolvent.diagonal().array() += s;
      const MatrixXcd g =
          C.cast<Complex>() * resolvent.partialPivLu().solve(B.cast<Complex>());
      r = std::max(r, rank_svd(g, 1e-9));
    }
  }
  return r;
}

std::vector<int> infinite_zero_structure(const LtiModel& m) {
  const int r = transfer_normal_rank(m.A, m.B, m.C);
  if (r == 0) return {};
  if (m.siso()) {
    // Order = relative degree = first Markov parameter index that is nonzero.
    const double scale =
        std::max(1.0, spectral_norm(m.B) * spectral_norm(m.C) *
                          std::max(1.0, spectral_norm(m.A)));
    MatrixXd power = MatrixXd::Identity(m.state_dim(), m.state_dim());
    for (int k = 1; k <= m.state_dim(); ++k) {
      const double markov = (m.C * power * m.B)(0, 0);
      if (std::abs(markov) > 1e-10 * scale) return {k};
      power = power * m.A;
    }
    return {};
  }
  const int rank_cb = rank_svd(MatrixXd(m.C * m.B), 1e-9);
  if (rank_cb == r) return std::vector<int>(static_cast<size_t>(r), 1);
  return {};  // higher-order structure present; reported as not uniform rank 1
}

StructuralReport structural_report(const LtiModel& m) {
  StructuralReport rep;
  std::tie(rep.stabilizable, rep.detectable) = check_stabilizable_detectable(m);
  rep.neutrally_stable = check_neutrally_stable(m);
  rep.invariant_zeros = invariant_zeros(m);
  rep.normal_rank = transfer_normal_rank(m.A, m.B, m.C);
  rep.left_invertible = rep.normal_rank == m.input_dim();
  rep.infinite_zero_orders = infinite_zero_structure(m);
  rep.uniform_rank_one =
      !rep.infinite_zero_orders.empty() &&
      std::all_of(rep.infinite_zero_orders.begin(), rep.infinite_zero_orders.end(),
                  [](int k) { return k == 1; });
  if (m.siso()) {
    rep.relative_degree_one =
        rep.infinite_zero_orders.size() == 1 && rep.infinite_zero_orders[0] == 1;
  }

  const bool ct = m.time_domain == TimeDomain::continuous;
  bool all_strictly_stable = true;
  bool none_unstable = true;
  std::vector<Complex> boundary;
  for (const auto& z : rep.invariant_zeros) {
    const double margin = ct ? z.real() : std::abs(z) - 1.0;
    if (margin >= -1e-8) all_strictly_stable = false;
    if (margin > 1e-8) none_unstable = false;
    if (std::abs(margin) <= 1e-8) boundary.push_back(z);
  }
  bool boundary_simple = true;
  for (size_t i = 0; i < boundary.size() && boundary_simple; ++i)
    for (size_t j = i + 1; j < boundary.size(); ++j)
      if (std::abs(boundary[i] - boundary[j]) < 1e-6) {
        boundary_simple = false;
        break;
      }
  rep.minimum_phase = all_strictly_stable;
  rep.weakly_minimum_phase = none_unstable && boundary_simple;
  return rep;
}

}  // namespace synkit
