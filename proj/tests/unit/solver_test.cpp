#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ammkit/solver.hpp"
#include "oracles.hpp"
#include "solver_suite.hpp"

using namespace ammkit;

TEST(Solver, OracleSuite) {
  for (const oracle::SuiteOutcome& o : oracle::run_solver_oracle_suite()) {
    SCOPED_TRACE(o.name);
    EXPECT_TRUE(o.optimal);
    EXPECT_NEAR(o.value, o.expected, 1e-6);
    EXPECT_GE(o.duality_slack, -1e-7);
    EXPECT_LE(o.primal_residual, 1e-7);
    EXPECT_LE(o.dual_residual, 1e-7);
  }
}

TEST(Solver, OptimalImpliesToleranceMet) {
  const SolverOptions opts;
  for (const oracle::OracleProblem& o : oracle::solver_oracle_suite()) {
    const SdpSolution s = solve(o.problem, opts);
    ASSERT_TRUE(s.optimal()) << o.name;
    EXPECT_LE(s.gap, opts.gap_tol) << o.name;
    EXPECT_NEAR(s.primal_objective, s.optimum, 1e-6) << o.name;
    EXPECT_NEAR(s.dual_objective, s.optimum, 1e-6) << o.name;
    for (const RealMatrix& f : s.lmi_values) {
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(f);
      EXPECT_GE(es.eigenvalues().minCoeff(), -opts.feas_tol) << o.name;
    }
  }
}

TEST(Solver, ObjectiveScaling) {
  for (const oracle::OracleProblem& o : oracle::solver_oracle_suite()) {
    SdpProblem scaled = o.problem;
    scaled.set_objective(3.5 * o.problem.objective(), o.problem.sense());
    const SdpSolution a = solve(o.problem), b = solve(scaled);
    EXPECT_EQ(a.status, b.status) << o.name;
    EXPECT_NEAR(b.optimum, 3.5 * a.optimum, 1e-6) << o.name;
  }
}

TEST(Solver, PrimalInfeasible) {
  SdpProblem p;
  const int t = p.add_var();
  p.add_nonnegative(LinExpr::variable(t));
  p.add_nonnegative(-1.0 - LinExpr::variable(t));
  p.set_objective(LinExpr::variable(t), Sense::Minimize);
  const SdpSolution s = solve(p);
  EXPECT_EQ(s.status, SdpStatus::PrimalInfeasible);
  EXPECT_THROW(require_acceptable(s, "infeasible"), SolverFailure);
}

TEST(Solver, Unbounded) {
  SdpProblem p;
  const int t = p.add_var();
  p.add_nonnegative(1.0 - LinExpr::variable(t));
  p.set_objective(LinExpr::variable(t), Sense::Minimize);
  EXPECT_EQ(solve(p).status, SdpStatus::DualInfeasible);
}

TEST(Solver, EqualityConstrainedFreeVariables) {
  // min x + y  s.t. x - y = 1, [[x, 0], [0, y + 2]] >= 0  ->  x = 0, y = -1.
  SdpProblem p;
  const int x = p.add_var(), y = p.add_var();
  p.add_equality(LinExpr::variable(x) - LinExpr::variable(y) - 1.0);
  AffineMatrix m(2);
  m(0, 0) = LinExpr::variable(x);
  m(1, 1) = LinExpr::variable(y) + 2.0;
  p.add_lmi(m);
  p.set_objective(LinExpr::variable(x) + LinExpr::variable(y), Sense::Minimize);
  const SdpSolution s = solve(p);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.optimum, -1.0, 1e-7);
  EXPECT_NEAR(s.primal_point(x), 0.0, 1e-6);
}

TEST(HermitianEmbedding, OneByOneIsScalarIdentity) {
  ComplexMatrix c(1, 1);
  c(0, 0) = 2.5;
  const RealMatrix e = HermitianExpr::constant(c).embed().evaluate(RealVector());
  EXPECT_NEAR((e - 2.5 * RealMatrix::Identity(2, 2)).norm(), 0.0, 1e-15);
}

TEST(HermitianEmbedding, SigmaYSpectrum) {
  const RealMatrix e = HermitianExpr::constant(pauli_y()).embed().evaluate(RealVector());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(e);
  EXPECT_NEAR(es.eigenvalues().minCoeff(), -1.0, 1e-14);
  EXPECT_NEAR(es.eigenvalues().maxCoeff(), 1.0, 1e-14);
  EXPECT_NEAR(e.trace(), 2.0 * pauli_y().trace().real(), 1e-15);
}

TEST(HermitianEmbedding, PreservesPsd) {
  oracle::Random rng(11);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix h = rng.hermitian(4);
    const ComplexMatrix psd = dagger(h) * h;
    const RealMatrix e = HermitianExpr::constant(psd).embed().evaluate(RealVector());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(e);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_NEAR(es.eigenvalues().minCoeff(), min_eigenvalue(psd), 1e-9);
  }
}

TEST(HermitianEmbedding, DualRoundTrip) {
  oracle::Random rng(12);
  const ComplexMatrix h = rng.hermitian(3), f = rng.hermitian(3);
  // X = embed(F)/2 satisfies <embed(H), X> = Re tr(H F).
  const RealMatrix x = 0.5 * HermitianExpr::constant(f).embed().evaluate(RealVector());
  const RealMatrix eh = HermitianExpr::constant(h).embed().evaluate(RealVector());
  EXPECT_NEAR((eh.cwiseProduct(x)).sum(), (h * f).trace().real(), 1e-12);
  EXPECT_LT((hermitian_from_embedded_dual(x) - f).norm(), 1e-12);
}

TEST(SdpaDump, Header) {
  const oracle::OracleProblem o = oracle::solver_oracle_suite()[1];
  std::ostringstream s;
  write_sdpa(o.problem, s);
  const std::string out = s.str();
  EXPECT_NE(out.find("= mDIM"), std::string::npos);
  EXPECT_NE(out.find("2 = nBLOCK"), std::string::npos);
  EXPECT_NE(out.find("2 2  = bLOCKsTRUCT"), std::string::npos);
}
