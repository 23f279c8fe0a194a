#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "synkit/errors.hpp"
#include "synkit/lti.hpp"
#include "synkit/structure.hpp"

using namespace synkit;

TEST_CASE("PBH stabilizability and detectability") {
  SUBCASE("full input authority") {
    const auto m = fixtures::ct_agent();
    const auto [stab, det] = check_stabilizable_detectable(m);
    CHECK(stab);
    CHECK(det);
  }
  SUBCASE("discrete example agent") {
    const auto m = fixtures::dt_agent();
    const auto [stab, det] = check_stabilizable_detectable(m);
    CHECK(stab);
    CHECK(det);
  }
  SUBCASE("unreachable unstable mode") {
    MatrixXd A(2, 2), B(2, 1), C(1, 2);
    A << 1, 0, 0, -1;
    B << 0, 1;
    C << 1, 0;
    const LtiModel m{A, B, C, TimeDomain::continuous};
    CHECK_FALSE(check_stabilizable_detectable(m).first);
  }
}

TEST_CASE("neutral stability") {
  CHECK(check_neutrally_stable(fixtures::ct_agent()));
  CHECK(check_neutrally_stable(fixtures::dt_agent()));

  MatrixXd jordan(2, 2);
  jordan << 0, 1, 0, 0;
  CHECK_FALSE(is_neutrally_stable(jordan, TimeDomain::continuous));
  // ... but the same matrix is fine in discrete time (eigenvalue 0 inside).
  CHECK(is_neutrally_stable(jordan, TimeDomain::discrete));

  MatrixXd semi(4, 4);
  semi.setZero();
  semi(0, 1) = 2.0;
  semi(1, 0) = -2.0;  // one rotation pair plus a semi-simple double zero
  CHECK(is_neutrally_stable(semi, TimeDomain::continuous));
}

TEST_CASE("random strictly stable matrices are neutrally stable") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const MatrixXd A = oracles::random_schur(4, rng, 0.85);
    CHECK(is_neutrally_stable(A, TimeDomain::discrete));
    MatrixXd Act = oracles::random_matrix(4, 4, rng);
    double max_re = -1e300;
    const VectorXcd ev = eigenvalues(Act);
    for (Eigen::Index i = 0; i < ev.size(); ++i) max_re = std::max(max_re, ev(i).real());
    Act -= (max_re + 0.3) * MatrixXd::Identity(4, 4);
    CHECK(is_neutrally_stable(Act, TimeDomain::continuous));
  }
}

TEST_CASE("infinite zero structure") {
  SUBCASE("uniform rank one for the continuous example") {
    const auto orders = infinite_zero_structure(fixtures::ct_agent());
    REQUIRE(orders.size() == 2);
    CHECK(orders[0] == 1);
    CHECK(orders[1] == 1);
  }
  SUBCASE("chain of integrators has order two") {
    MatrixXd A(2, 2), B(2, 1), C(1, 2);
    A << 0, 1, 0, 0;
    B << 0, 1;
    C << 1, 0;
    const LtiModel m{A, B, C, TimeDomain::continuous};
    const auto orders = infinite_zero_structure(m);
    REQUIRE(orders.size() == 1);
    CHECK(orders[0] == 2);
  }
  SUBCASE("compensated continuous example stays uniform rank one") {
    const auto ca = compose(fixtures::ct_agent(), fixtures::ct_precompensator());
    const auto orders = infinite_zero_structure(ca.to_model());
    REQUIRE(orders.size() == 1);
    CHECK(orders[0] == 1);
  }
}

TEST_CASE("structural report of the example agents") {
  SUBCASE("continuous") {
    const auto rep = structural_report(fixtures::ct_agent());
    CHECK(rep.stabilizable);
    CHECK(rep.detectable);
    CHECK(rep.neutrally_stable);
    CHECK(rep.uniform_rank_one);
    CHECK_FALSE(rep.left_invertible);  // three inputs, normal rank two
  }
  SUBCASE("discrete satisfies the design list") {
    const auto rep = structural_report(fixtures::dt_agent());
    CHECK(rep.dt_design_ok());
  }
  SUBCASE("an eigenvalue at +1 kills feasibility") {
    LtiModel m = fixtures::ct_agent();
    m.A(2, 2) = 1.0;
    const auto rep = structural_report(m);
    CHECK_FALSE(rep.neutrally_stable);
    CHECK_FALSE(rep.full_state_design_ok());
  }
}

TEST_CASE("minimum phase implies weakly minimum phase") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    MatrixXd A = oracles::random_matrix(4, 4, rng);
    MatrixXd B = oracles::random_matrix(4, 2, rng);
    MatrixXd C = oracles::random_matrix(2, 4, rng);
    const auto rep = structural_report({A, B, C, TimeDomain::continuous});
    if (rep.minimum_phase) CHECK(rep.weakly_minimum_phase);
  }
}

TEST_CASE("model shape validation") {
  MatrixXd A(2, 2), B(3, 1), C(1, 2);
  A.setZero();
  B.setZero();
  C.setZero();
  CHECK_THROWS_AS(LtiModel(A, B, C, TimeDomain::continuous), Error);
}
