#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "synkit/lti.hpp"
#include "synkit/structure.hpp"

using namespace synkit;

namespace {

LtiModel siso_from_transfer(const std::vector<double>& num_asc,
                            const std::vector<double>& den_asc) {
  // Controllable canonical form for g(s) = num(s)/den(s), monic denominator.
  const Eigen::Index n = static_cast<Eigen::Index>(den_asc.size()) - 1;
  MatrixXd A = MatrixXd::Zero(n, n), B = MatrixXd::Zero(n, 1), C = MatrixXd::Zero(1, n);
  A.block(0, 1, n - 1, n - 1).setIdentity();
  for (Eigen::Index j = 0; j < n; ++j) A(n - 1, j) = -den_asc[static_cast<size_t>(j)];
  B(n - 1, 0) = 1.0;
  for (size_t j = 0; j < num_asc.size(); ++j) C(0, static_cast<Eigen::Index>(j)) = num_asc[j];
  return {A, B, C, TimeDomain::continuous};
}

}  // namespace

TEST_CASE("zeros of (s+1)/(s^2+1)") {
  const auto m = siso_from_transfer({1, 1}, {1, 0, 1});
  const auto zeros = invariant_zeros(m);
  REQUIRE(zeros.size() == 1);
  CHECK(std::abs(zeros[0] - Complex(-1, 0)) < 1e-9);
}

TEST_CASE("zeros of (s-2)/(s+1)^2 flag non-minimum phase") {
  const auto m = siso_from_transfer({-2, 1}, {1, 2, 1});
  const auto zeros = invariant_zeros(m);
  REQUIRE(zeros.size() == 1);
  CHECK(std::abs(zeros[0] - Complex(2, 0)) < 1e-9);
  CHECK_FALSE(structural_report(m).minimum_phase);
}

TEST_CASE("full-state output map has no invariant zeros") {
  const auto m = fixtures::ct_agent_full_state();
  CHECK(invariant_zeros(m).empty());
}

TEST_CASE("compensated continuous example has no unstable zeros") {
  const auto ca = compose(fixtures::ct_agent(), fixtures::ct_precompensator());
  for (const auto& z : invariant_zeros(ca.to_model())) CHECK(z.real() < -1e-8);
}

TEST_CASE("pencil zeros match the polynomial numerator oracle") {
  std::mt19937_64 rng(314159);
  std::uniform_int_distribution<int> size(2, 5);
  int done = 0;
  while (done < 50) {
    const int n = size(rng);
    const MatrixXd A = oracles::random_matrix(n, n, rng);
    const MatrixXd B = oracles::random_matrix(n, 1, rng);
    const MatrixXd C = oracles::random_matrix(1, n, rng);
    if (!oracles::is_minimal_siso(A, B, C)) continue;
    ++done;

    auto expected = oracles::siso_zeros(A, B, C);
    auto got = invariant_zeros(A, B, C);
    REQUIRE(got.size() == expected.size());
    sort_spectrum(expected);
    sort_spectrum(got);
    for (size_t i = 0; i < got.size(); ++i)
      CHECK(std::abs(got[i] - expected[i]) < 1e-6 * (1.0 + std::abs(expected[i])));
  }
}
