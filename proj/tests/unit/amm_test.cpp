#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ammkit/amm.hpp"
#include "ammkit/bell.hpp"
#include "ammkit/incompat.hpp"
#include "ammkit/steering.hpp"
#include "oracles.hpp"

using namespace ammkit;

namespace {

Letter L(int y, int b) { return {y, b}; }
OperatorWord W(std::vector<Letter> l) { return OperatorWord(std::move(l)); }

Correlation chsh_isotropic(double v) {
  return born_correlation(isotropic_state(2, v), chsh_alice_settings(), chsh_bob_settings());
}

Correlation deterministic(int a0, int a1, int b0, int b1) {
  Correlation p(Scenario::bipartite(2, 2, 2, 2));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) p(x ? a1 : a0, y ? b1 : b0, x, y) = 1.0;
  return p;
}

Correlation ch_optimal(double theta) {
  const MeasurementAssemblage alice = qubit_measurements({{1, 0, 0}, {0, 0, 1}});
  const ComplexMatrix rho = pure_partially_entangled(theta);
  return born_correlation(rho, alice, best_response_bob(clauser_horne(), rho, {2, 2}, alice));
}

}  // namespace

TEST(Words, MultiplyRules) {
  EXPECT_EQ(*multiply(W({L(0, 0)}), W({L(0, 0)})), W({L(0, 0)}));
  EXPECT_FALSE(multiply(W({L(0, 0)}), W({L(0, 1)})).has_value());
  EXPECT_EQ(*multiply(W({L(0, 0)}), W({L(1, 0)})), W({L(0, 0), L(1, 0)}));
  EXPECT_EQ(*multiply(W({L(0, 0), L(1, 0)}), W({L(1, 0), L(0, 0)})), W({L(0, 0), L(1, 0), L(0, 0)}));
  EXPECT_EQ(*multiply(OperatorWord(), W({L(1, 0)})), W({L(1, 0)}));
}

TEST(Words, CanonicalIdentifiesReversal) {
  const OperatorWord w = W({L(1, 0), L(0, 0)});
  EXPECT_EQ(canonical(w), canonical(w.reversed()));
  EXPECT_EQ(canonical(w), W({L(0, 0), L(1, 0)}));
}

TEST(Words, EnumerationCounts) {
  EXPECT_EQ(enumerate_words(2, 2, 1).size(), 3u);
  EXPECT_EQ(enumerate_words(3, 2, 1).size(), 4u);
  // Level 2 over two settings adds E0E1 and E1E0.
  EXPECT_EQ(enumerate_words(2, 2, 2).size(), 5u);
  // Two settings, three outcomes: 1 + 4 + 8.
  EXPECT_EQ(enumerate_words(2, 3, 2).size(), 13u);
  EXPECT_THROW(enumerate_words(4, 4, 6), std::invalid_argument);
}

TEST(Template, LevelOneTwoSettingsTwoOutcomes) {
  const AmmTemplate t = build_template(2, 2, 1);
  ASSERT_EQ(t.size(), 3);
  EXPECT_EQ(t.words[0], OperatorWord());
  EXPECT_EQ(t.words[1], W({L(0, 0)}));
  EXPECT_EQ(t.words[2], W({L(1, 0)}));
  EXPECT_EQ(t.num_unknowns(), 1);
  EXPECT_EQ(t.entry(0, 0).kind, EntryKind::Normalization);
  EXPECT_EQ(t.entry(1, 1).kind, EntryKind::Probability);
  EXPECT_EQ(t.entry(0, 2).kind, EntryKind::Probability);
  EXPECT_EQ(t.entry(1, 2).kind, EntryKind::Unknown);
  EXPECT_EQ(t.entry(2, 1).kind, EntryKind::Unknown);
}

TEST(Template, LevelOneThreeSettings) {
  const AmmTemplate t = build_template(3, 2, 1);
  EXPECT_EQ(t.size(), 4);
  EXPECT_EQ(t.num_unknowns(), 3);
}

TEST(Template, SymmetricClassification) {
  for (int level : {1, 2, 3}) {
    const AmmTemplate t = build_template(2, 3, level);
    for (int i = 0; i < t.size(); ++i)
      for (int j = 0; j < t.size(); ++j) {
        EXPECT_EQ(t.entry(i, j).kind, t.entry(j, i).kind);
        EXPECT_EQ(t.slot(t.entry(i, j)), t.slot(t.entry(j, i)));
      }
  }
}

TEST(Template, LevelOneDiagonalIsKnown) {
  const AmmTemplate t = build_template(3, 3, 1);
  for (int i = 0; i < t.size(); ++i) EXPECT_NE(t.entry(i, i).kind, EntryKind::Unknown);
}

TEST(Template, LevelTwoDiagonalCanBeUnknown) {
  // <E0|0 E0|1 E0|0> sits on the diagonal at the row of E0|1 E0|0.
  const AmmTemplate t = build_template(2, 2, 2);
  int unknown_diag = 0;
  for (int i = 0; i < t.size(); ++i) unknown_diag += t.entry(i, i).kind == EntryKind::Unknown;
  EXPECT_GT(unknown_diag, 0);
}

TEST(Template, JsonListsWords) {
  const nlohmann::json j = template_to_json(build_template(2, 2, 1));
  EXPECT_EQ(j.at("words").size(), 3u);
}

TEST(Instantiate, MatchesDirectTraces) {
  oracle::Random rng(71);
  for (int level : {1, 2}) {
    const AmmTemplate t = build_template(2, 2, level);
    const MeasurementAssemblage bob = rng.qubit_projective(2);
    const ComplexMatrix sigma = rng.density(2, 2);
    const ComplexMatrix got = instantiate_numeric(t, sigma, bob);
    EXPECT_LT((got - oracle::moment_matrix_direct(t, sigma, bob)).norm(), 1e-12);
  }
}

TEST(Instantiate, PhiPlusPaulisByHand) {
  // Alice and Bob measure sigma_z, sigma_x on |Phi+>. For a = 0, x = 0 the
  // conditional state is |0><0|/2; chi = [[1/2, 1/2, 1/4], [1/2, 1/2, 1/4],
  // [1/4, 1/4, 1/4]] with words {1, E0|z, E0|x}.
  const MeasurementAssemblage m = qubit_measurements({{0, 0, 1}, {1, 0, 0}});
  const Assemblage a = assemblage_from_state(maximally_entangled(2), m, 2);
  const auto chi = instantiate_numeric(build_template(2, 2, 1), a, m);
  const double expected[3][3] = {{0.5, 0.5, 0.25}, {0.5, 0.5, 0.25}, {0.25, 0.25, 0.25}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(chi[0][0](i, j).real(), expected[i][j], 1e-14);
}

TEST(Instantiate, LhsAssemblageGivesPsdMatrices) {
  oracle::Random rng(72);
  const AmmTemplate t = build_template(2, 2, 2);
  const Assemblage a = assemblage_from_state(rng.separable(2, 2, 3), rng.qubit_projective(2), 2);
  for (const auto& row : instantiate_numeric(t, a, rng.qubit_projective(2)))
    for (const ComplexMatrix& chi : row) EXPECT_GE(min_eigenvalue(chi), -1e-12);
}

TEST(Instantiate, SumOverOutcomesIndependentOfSetting) {
  oracle::Random rng(73);
  const AmmTemplate t = build_template(3, 2, 2);
  const Assemblage a = assemblage_from_state(rng.density(4, 2), rng.qubit_projective(3), 2);
  const auto chi = instantiate_numeric(t, a, rng.qubit_projective(3));
  const ComplexMatrix s0 = chi[0][0] + chi[0][1];
  for (int x = 1; x < 3; ++x) EXPECT_LT((chi[x][0] + chi[x][1] - s0).norm(), 1e-12);
}

TEST(SrDi, DeterministicIsZero) {
  EXPECT_NEAR(sr_di(deterministic(0, 1, 1, 0), 1).value, 0.0, 1e-7);
  EXPECT_NEAR(sr_di(deterministic(1, 1, 0, 1), 2).value, 0.0, 1e-7);
}

TEST(SrDi, ChshIsotropicLinearRegime) {
  for (double v : {0.75, 0.85, 0.9})
    EXPECT_NEAR(sr_di(chsh_isotropic(v), 1).value, oracle::nr_chsh_isotropic(v), 1e-5) << v;
}

TEST(SrDi, BelowSteeringRobustness) {
  const double v = 0.9;
  const Assemblage a = assemblage_from_state(isotropic_state(2, v), chsh_alice_settings(), 2);
  EXPECT_LE(sr_di(chsh_isotropic(v), 2).value, steering_robustness(a).value + 1e-6);
}

TEST(SrDiBell, LocalValueIsZero) { EXPECT_NEAR(sr_di_bell(chsh(), 2.0, 1).value, 0.0, 1e-7); }

TEST(SrDiBell, TsirelsonMatchesFullTable) {
  const double full = sr_di(chsh_isotropic(1.0), 1).value;
  EXPECT_NEAR(sr_di_bell(chsh(), 2.0 * std::sqrt(2.0), 1).value, full, 1e-5);
}

TEST(SrDiBell, Monotone) {
  double prev = 0.0;
  for (double t : {2.0, 2.2, 2.4, 2.6, 2.8}) {
    const double b = sr_di_bell(chsh(), t, 1).value;
    EXPECT_GE(b, prev - 1e-7) << t;
    prev = b;
  }
}

TEST(SrDiBell, AboveQuantumMaximumInfeasible) {
  EXPECT_TRUE(sr_di_bell(chsh(), 3.5, 1).infeasible());
}

TEST(SrDiConsistent, LocalIsZero) {
  EXPECT_NEAR(sr_di_consistent(deterministic(0, 0, 1, 0), 2).value, 0.0, 1e-7);
}

TEST(SrDiConsistent, AboveSrDiOnPureStateFamily) {
  for (double th : {M_PI / 16, M_PI / 8}) {
    const Correlation p = ch_optimal(th);
    EXPECT_GE(sr_di_consistent(p, 2).value, sr_di(p, 2).value - 1e-6) << th;
  }
}

TEST(SrDiConsistent, TightAgainstIrAtMaximalEntanglement) {
  const double ir = incompatibility_robustness(qubit_measurements({{1, 0, 0}, {0, 0, 1}})).value;
  EXPECT_NEAR(sr_di_consistent(ch_optimal(M_PI / 4), 2).value, ir, 1e-4);
}

TEST(SwDi, LocalIsZero) {
  EXPECT_NEAR(sw_di(deterministic(1, 0, 0, 0), 2, false).value, 0.0, 1e-7);
  EXPECT_NEAR(sw_di(deterministic(1, 0, 0, 0), 2, true).value, 0.0, 1e-7);
}

TEST(SwDi, ConsistentNearUnityOnPureStates) {
  for (double deg : {3.0, 20.0, 45.0})
    EXPECT_GE(sw_di(ch_optimal(deg * M_PI / 180.0), 2, true).value, 0.999) << deg;
}

TEST(SwDi, BelowSteerableWeight) {
  const double v = 0.85;
  const Assemblage a = assemblage_from_state(isotropic_state(2, v), chsh_alice_settings(), 2);
  EXPECT_LE(sw_di(chsh_isotropic(v), 2, false).value, steerable_weight(a).value + 1e-6);
}

TEST(Tripartite, PrBoxFeasible) {
  const TripartiteAssemblage pr = pr_box_assemblage(0.5 * identity(2));
  const MeasurementAssemblage c = qubit_measurements({{0, 0, 1}, {1, 0, 0}});
  EXPECT_TRUE(tripartite_amm_feasible(pr, c, 1).feasible);
  EXPECT_TRUE(tripartite_amm_feasible(pr, c, 2).feasible);
  EXPECT_NEAR(tripartite_correlation(pr, c).max_violation(), 0.0, 1e-12);
}

TEST(Tripartite, GhzQuantumFeasible) {
  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix rho = projector(ghz);
  const MeasurementAssemblage m = qubit_measurements({{0, 0, 1}, {1, 0, 0}});
  const Correlation p = born_correlation(rho, m, m, m);
  EXPECT_TRUE(tripartite_amm_feasible(p, 1).feasible);
  EXPECT_TRUE(tripartite_amm_feasible(p, 2).feasible);
}

TEST(Tripartite, SignallingInfeasible) {
  Correlation p(Scenario::tripartite(2, 2, 2, 2, 2, 2));
  // Alice's outcome copies Bob's setting.
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) p(y, 0, 0, x, y, z) = 1.0;
  EXPECT_FALSE(tripartite_amm_feasible(p, 1).feasible);
}
