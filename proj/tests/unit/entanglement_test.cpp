#include <gtest/gtest.h>

#include "ammkit/entanglement.hpp"
#include "ammkit/quantum.hpp"
#include "ammkit/steering.hpp"
#include "oracles.hpp"

using namespace ammkit;

TEST(ErPpt, SeparableDiagonalIsZero) {
  ComplexMatrix d = ComplexMatrix::Zero(4, 4);
  d(0, 0) = 0.4;
  d(3, 3) = 0.6;
  EXPECT_NEAR(er_ppt(d, {2, 2}), 0.0, 1e-7);
}

TEST(ErPpt, PhiPlusIsOne) { EXPECT_NEAR(er_ppt(maximally_entangled(2), {2, 2}), 1.0, 1e-6); }

TEST(ErPpt, IsotropicQubitsMatchFormula) {
  for (int i = 0; i <= 10; ++i) {
    const double v = 0.1 * i;
    EXPECT_NEAR(er_ppt(isotropic_state(2, v), {2, 2}), oracle::er_isotropic(2, v), 1e-6) << v;
  }
}

TEST(ErPpt, IsotropicQutrits) {
  for (double v : {0.2, 0.5, 1.0})
    EXPECT_NEAR(er_ppt(isotropic_state(3, v), {3, 3}), oracle::er_isotropic(3, v), 1e-6) << v;
}

TEST(ErPpt, WitnessOmegaIsFeasible) {
  oracle::Random rng(61);
  const ComplexMatrix rho = rng.density(4, 1);
  const EntanglementResult r = er_ppt_result(rho, {2, 2});
  EXPECT_GE(min_eigenvalue(r.omega - rho), -1e-7);
  EXPECT_GE(min_eigenvalue(partial_transpose(r.omega, {2, 2}, Subsystem::A)), -1e-7);
  EXPECT_NEAR(trace(r.omega).real() - 1.0, r.value, 1e-6);
}

TEST(ErPpt, DominatesSteeringRobustness) {
  oracle::Random rng(62);
  for (int t = 0; t < 6; ++t) {
    const ComplexMatrix rho = rng.density(4, 1 + t % 4);
    const Assemblage a = assemblage_from_state(rho, rng.qubit_projective(2), 2);
    EXPECT_GE(er_ppt(rho, {2, 2}), steering_robustness(a).value - 1e-6);
  }
}

TEST(ErIsotropicAnalytic, Values) {
  EXPECT_NEAR(er_isotropic_analytic(2, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(er_isotropic_analytic(3, 0.25), 0.0, 1e-15);
  EXPECT_NEAR(er_isotropic_analytic(3, 1.0), 2.0, 1e-15);
  EXPECT_NEAR(er_isotropic_analytic(2, 0.8), 0.7, 1e-15);
  EXPECT_NEAR(er_isotropic_analytic(2, 0.1), 0.0, 1e-15);
}
