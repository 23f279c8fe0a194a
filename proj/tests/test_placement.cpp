#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "synkit/errors.hpp"
#include "synkit/placement.hpp"

using namespace synkit;

TEST_CASE("observer poles land on the preset ladder (continuous)") {
  MatrixXd A11(3, 3), Cbar(1, 3);
  A11 << 0, 0, 1, -1, -2, 1, 0, -1, 0;
  Cbar << 1, 0, 0;
  const MatrixXd H = place_observer_gain(A11, Cbar, TimeDomain::continuous);
  CHECK(match_spectra(to_vector(eigenvalues(MatrixXd(A11 - H * Cbar))),
                      {{-1.0, 0}, {-1.5, 0}, {-2.0, 0}}, 1e-6));
}

TEST_CASE("observer poles land on the preset ladder (discrete)") {
  const auto m = fixtures::dt_agent();
  const MatrixXd H = place_observer_gain(m.A, m.C, TimeDomain::discrete);
  CHECK(match_spectra(to_vector(eigenvalues(MatrixXd(m.A - H * m.C))),
                      {{0.0, 0}, {0.1, 0}, {-0.1, 0}}, 1e-6));
}

TEST_CASE("unobservable but stable modes are left in place") {
  // block-diagonal: observable oscillator + hidden stable mode
  MatrixXd A = MatrixXd::Zero(3, 3);
  A(0, 1) = 1;
  A(1, 0) = -1;
  A(2, 2) = -3;
  MatrixXd C(1, 3);
  C << 1, 0, 0;
  const MatrixXd H = place_observer_gain(A, C, TimeDomain::continuous);
  const auto spec = to_vector(eigenvalues(MatrixXd(A - H * C)));
  CHECK(match_spectra(spec, {{-1.0, 0}, {-1.5, 0}, {-3.0, 0}}, 1e-6));
}

TEST_CASE("undetectable pairs are rejected") {
  MatrixXd A = MatrixXd::Zero(2, 2);
  A(0, 0) = 1.0;  // unstable and unobservable
  MatrixXd C(1, 2);
  C << 0, 1;
  CHECK_THROWS_WITH_AS(place_observer_gain(A, C, TimeDomain::continuous),
                       doctest::Contains("ObserverDesignFailed"), Error);
}

TEST_CASE("zero output map needs a stable plant") {
  const MatrixXd A = -MatrixXd::Identity(2, 2);
  const MatrixXd C = MatrixXd::Zero(1, 2);
  const MatrixXd H = place_observer_gain(A, C, TimeDomain::continuous);
  CHECK(H.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("placement succeeds on random observable pairs") {
  std::mt19937_64 rng(1009);
  std::uniform_int_distribution<int> size(1, 6), outs(1, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = size(rng);
    const int p = outs(rng);
    const MatrixXd A = oracles::random_matrix(n, n, rng);
    const MatrixXd C = oracles::random_matrix(p, n, rng);
    const TimeDomain td = trial % 2 ? TimeDomain::continuous : TimeDomain::discrete;
    const MatrixXd H = place_observer_gain(A, C, td);
    const VectorXcd ev = eigenvalues(MatrixXd(A - H * C));
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (td == TimeDomain::continuous)
        CHECK(ev(i).real() < -1e-8);
      else
        CHECK(std::abs(ev(i)) < 1.0 - 1e-8);
    }
  }
}
