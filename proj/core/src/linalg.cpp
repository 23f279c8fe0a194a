#include "synkit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <limits>

#include "synkit/errors.hpp"

namespace synkit {

double spectral_norm(const MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

double spectral_norm(const MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

double sym_max_eig(const MatrixXd& s) {
  if (s.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (s + s.transpose()),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double sym_min_eig(const MatrixXd& s) {
  if (s.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (s + s.transpose()),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace {

template <typename Mat>
int rank_impl(const Mat& m, double rtol) {
  if (m.size() == 0) return 0;
  auto sv = m.jacobiSvd().singularValues();
  const double cut = rtol * std::max(sv(0), 1e-300);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

template <typename Mat>
Mat kernel_impl(const Mat& m, double cut_abs, double rtol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0 || m.size() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  auto sv = svd.singularValues();
  const double cut = std::max(cut_abs, rtol * std::max(sv(0), 1e-300));
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixV().rightCols(n - r);
}

}  // namespace

int rank_svd(const MatrixXd& m, double rtol) { return rank_impl(m, rtol); }
int rank_svd(const MatrixXcd& m, double rtol) { return rank_impl(m, rtol); }

MatrixXd kernel_basis(const MatrixXd& m, double rtol) {
  return kernel_impl(m, 0.0, rtol);
}
MatrixXcd kernel_basis(const MatrixXcd& m, double rtol) {
  return kernel_impl(m, 0.0, rtol);
}
MatrixXd kernel_basis_abs(const MatrixXd& m, double cut) {
  return kernel_impl(m, cut, 0.0);
}
MatrixXcd kernel_basis_abs(const MatrixXcd& m, double cut) {
  return kernel_impl(m, cut, 0.0);
}

VectorXcd eigenvalues(const MatrixXd& m) {
  if (m.size() == 0) return VectorXcd(0);
  Eigen::EigenSolver<MatrixXd> es(m, false);
  return es.eigenvalues();
}

VectorXcd eigenvalues(const MatrixXcd& m) {
  if (m.size() == 0) return VectorXcd(0);
  Eigen::ComplexEigenSolver<MatrixXcd> es(m, false);
  return es.eigenvalues();
}

MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

bool match_spectra(std::vector<Complex> a, std::vector<Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  // Repeatedly pair the globally closest remaining values.
  while (!a.empty()) {
    double best = std::numeric_limits<double>::infinity();
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) {
        const double d = std::abs(a[i] - b[j]);
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    if (best > tol) return false;
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(bi));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return true;
}

bool match_spectra(const VectorXcd& a, const VectorXcd& b, double tol) {
  return match_spectra(to_vector(a), to_vector(b), tol);
}

std::vector<Complex> to_vector(const VectorXcd& v) {
  return {v.data(), v.data() + v.size()};
}

void sort_spectrum(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
}

}  // namespace synkit
