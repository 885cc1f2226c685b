#include <gtest/gtest.h>

#include <cmath>

#include "ammkit/bell.hpp"
#include "ammkit/incompat.hpp"
#include "ammkit/steering.hpp"
#include "oracles.hpp"

using namespace ammkit;

namespace {

MeasurementAssemblage zx() { return qubit_measurements({{0, 0, 1}, {1, 0, 0}}); }

Assemblage phi_plus_zx() { return assemblage_from_state(maximally_entangled(2), zx(), 2); }

// P(a|x) rho_hat for fixed probabilities: unsteerable by construction.
Assemblage single_state(const ComplexMatrix& rho_hat) {
  Assemblage a;
  a.states = {{0.3 * rho_hat, 0.7 * rho_hat}, {0.5 * rho_hat, 0.5 * rho_hat}};
  return a;
}

Assemblage mix(const Assemblage& a, const Assemblage& b, double p) {
  Assemblage out = a;
  for (int x = 0; x < a.num_settings(); ++x)
    for (int o = 0; o < a.num_outcomes(); ++o)
      out.states[x][o] = (1.0 - p) * a.states[x][o] + p * b.states[x][o];
  return out;
}

}  // namespace

TEST(LhsModel, SeparableStateIsLocal) {
  oracle::Random rng(41);
  for (int t = 0; t < 5; ++t) {
    const Assemblage a = assemblage_from_state(rng.separable(2, 2, 4), rng.qubit_projective(3), 2);
    EXPECT_TRUE(has_lhs_model(a).feasible);
  }
}

TEST(LhsModel, PhiPlusSteers) {
  const LhsModel m = has_lhs_model(phi_plus_zx());
  EXPECT_FALSE(m.feasible);
  EXPECT_GT(m.residual, 1e-3);
  EXPECT_GT(steering_robustness(phi_plus_zx()).value, 0.1);
}

TEST(LhsModel, SingleSettingNeverSteers) {
  oracle::Random rng(42);
  const Assemblage a = assemblage_from_state(rng.density(4, 1), rng.qubit_projective(1), 2);
  EXPECT_TRUE(has_lhs_model(a).feasible);
  EXPECT_NEAR(steering_robustness(a).value, 0.0, 1e-7);
}

TEST(SteeringRobustness, UnsteerableIsZero) {
  oracle::Random rng(43);
  EXPECT_NEAR(steering_robustness(single_state(rng.density(2, 2))).value, 0.0, 1e-7);
}

TEST(SteeringRobustness, PhiPlusZxMatchesDualWitness) {
  const Assemblage a = phi_plus_zx();
  const SteeringResult r = steering_robustness(a);
  EXPECT_NEAR(r.value, oracle::generalized_sr_zx(), 1e-6);
  const SteeringInequality w = steering_inequality(a);
  EXPECT_NEAR(w.robustness_bound(), r.value, 1e-6);
  EXPECT_NEAR(w.evaluate(a), w.value, 1e-9);
}

TEST(SteeringRobustness, WitnessRespectedByLhsAssemblages) {
  const SteeringInequality w = steering_inequality(phi_plus_zx());
  oracle::Random rng(44);
  for (int t = 0; t < 10; ++t) {
    const Assemblage lhs = assemblage_from_state(rng.separable(2, 2, 3), zx(), 2);
    EXPECT_LE(w.evaluate(lhs), w.local_bound + 1e-7);
  }
}

TEST(SteeringRobustness, IsotropicKinkAtInverseSqrt2) {
  auto sr = [](double v) {
    return steering_robustness(assemblage_from_state(isotropic_state(2, v), zx(), 2)).value;
  };
  const double vk = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(sr(0.5), 0.0, 1e-7);
  EXPECT_NEAR(sr(vk), 0.0, 1e-6);
  EXPECT_GT(sr(vk + 0.02), 1e-4);
  // Linear on [1/sqrt2, 1]: the fit through two points predicts a third.
  const double s1 = sr(0.8), s2 = sr(0.95);
  const double slope = (s2 - s1) / 0.15;
  EXPECT_NEAR(sr(0.875), s1 + slope * 0.075, 1e-6);
  EXPECT_NEAR(s1 + slope * (vk - 0.8), 0.0, 1e-6);
}

TEST(ConsistentSteeringRobustness, UnsteerableIsZero) {
  oracle::Random rng(45);
  EXPECT_NEAR(consistent_steering_robustness(single_state(rng.density(2, 2))).value, 0.0, 1e-7);
}

TEST(ConsistentSteeringRobustness, AboveSrOnPureStateFamily) {
  const MeasurementAssemblage alice = qubit_measurements({{1, 0, 0}, {0, 0, 1}});
  for (double deg : {5.0, 15.0, 30.0, 45.0}) {
    const Assemblage a = assemblage_from_state(pure_partially_entangled(deg * M_PI / 180.0), alice, 2);
    const double src = consistent_steering_robustness(a).value;
    EXPECT_GE(src, steering_robustness(a).value - 1e-7) << deg;
    EXPECT_LE(src, incompatibility_robustness(alice).value + 1e-6) << deg;
  }
}

TEST(SteerableWeight, UnsteerableIsZero) {
  oracle::Random rng(46);
  EXPECT_NEAR(steerable_weight(single_state(rng.density(2, 2))).value, 0.0, 1e-7);
}

TEST(SteerableWeight, PhiPlusIsOne) { EXPECT_NEAR(steerable_weight(phi_plus_zx()).value, 1.0, 1e-6); }

TEST(SteerableWeight, MonotoneUnderLhsNoise) {
  const Assemblage a = phi_plus_zx();
  const Assemblage noise = single_state(0.5 * identity(2));
  const double base = steerable_weight(a).value;
  double prev = base;
  for (double p : {0.1, 0.3, 0.5, 0.8}) {
    const double w = steerable_weight(mix(a, noise, p)).value;
    EXPECT_LE(w, base + 1e-7);
    EXPECT_LE(w, prev + 1e-7);
    EXPECT_GE(w, -1e-8);
    prev = w;
  }
}

TEST(SteeringEquivalentObservables, SingleStateGivesRangeProjector) {
  ComplexMatrix rho_hat = ComplexMatrix::Zero(2, 2);
  rho_hat(0, 0) = 1.0;
  const MeasurementAssemblage b = steering_equivalent_observables(single_state(rho_hat));
  EXPECT_NEAR(b.povms[0][0](0, 0).real(), 0.3, 1e-12);
  EXPECT_NEAR(b.povms[0][1](0, 0).real(), 0.7, 1e-12);
  EXPECT_NEAR(b.povms[0][0](1, 1).real(), 0.0, 1e-12);
  const MeasurementAssemblage r = steering_equivalent_observables_on_range(single_state(rho_hat));
  EXPECT_EQ(r.dim(), 1);
}

TEST(SteeringEquivalentObservables, PhiPlusSigmaZ) {
  const MeasurementAssemblage z{{qubit_projective({0, 0, 1})}};
  const MeasurementAssemblage b =
      steering_equivalent_observables(assemblage_from_state(maximally_entangled(2), z, 2));
  // rho_B = I/2, so B_{a|x} = 2 rho_{a|x} = the basis projectors.
  EXPECT_LT((b.povms[0][0] - z.povms[0][0]).norm(), 1e-12);
  EXPECT_LT((b.povms[0][1] - z.povms[0][1]).norm(), 1e-12);
}

TEST(SteeringEquivalentObservables, IrEqualsConsistentRobustness) {
  oracle::Random rng(47);
  for (int t = 0; t < 5; ++t) {
    const Assemblage a = assemblage_from_state(rng.density(4, 4), rng.qubit_projective(2), 2);
    EXPECT_NEAR(incompatibility_robustness(steering_equivalent_observables(a)).value,
                consistent_steering_robustness(a).value, 1e-6);
  }
}
