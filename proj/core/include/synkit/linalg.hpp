#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace synkit {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using Complex = std::complex<double>;

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const MatrixXd& m);
double spectral_norm(const MatrixXcd& m);

/// Extremal eigenvalues of a symmetric matrix (symmetrized defensively).
double sym_max_eig(const MatrixXd& s);
double sym_min_eig(const MatrixXd& s);

/// Numeric rank: singular values above rtol * max(sigma_max, atol_floor).
int rank_svd(const MatrixXd& m, double rtol = 1e-10);
int rank_svd(const MatrixXcd& m, double rtol = 1e-10);

/// Orthonormal basis of the right null space (columns). Real and complex.
MatrixXd kernel_basis(const MatrixXd& m, double rtol = 1e-10);
MatrixXcd kernel_basis(const MatrixXcd& m, double rtol = 1e-10);

/// Null-space basis with an absolute singular-value cut; the right choice
/// when the matrix itself may be numerically zero but lives at a known
/// parent scale.
MatrixXd kernel_basis_abs(const MatrixXd& m, double cut);
MatrixXcd kernel_basis_abs(const MatrixXcd& m, double cut);

VectorXcd eigenvalues(const MatrixXd& m);
VectorXcd eigenvalues(const MatrixXcd& m);

MatrixXd kron(const MatrixXd& a, const MatrixXd& b);

/// Multiset match of two spectra within an absolute tolerance
/// (greedy globally-nearest pairing; sizes must agree).
bool match_spectra(std::vector<Complex> a, std::vector<Complex> b, double tol);
bool match_spectra(const VectorXcd& a, const VectorXcd& b, double tol);

std::vector<Complex> to_vector(const VectorXcd& v);

/// Sort key for reproducible spectra output: by real part, then imaginary.
void sort_spectrum(std::vector<Complex>& v);

}  // namespace synkit
