#include "solver_suite.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace oracle {

using namespace ammkit;

namespace {

OracleProblem nonnegative_scalar() {
  OracleProblem o{"min t, t >= 0", {}, 0.0};
  const int t = o.problem.add_var();
  o.problem.add_nonnegative(LinExpr::variable(t));
  o.problem.set_objective(LinExpr::variable(t), Sense::Minimize);
  return o;
}

OracleProblem forced_trace() {
  OracleProblem o{"min tr X, X >= diag(1,2)", {}, 3.0};
  const AffineMatrix x = o.problem.add_psd_matrix(2);
  RealMatrix d = RealMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  o.problem.add_lmi(x - AffineMatrix::constant(d));
  o.problem.set_objective(x.trace(), Sense::Minimize);
  return o;
}

OracleProblem lambda_max(const std::string& name, const RealMatrix& a, double expected) {
  OracleProblem o{name, {}, expected};
  const int t = o.problem.add_var();
  AffineMatrix m = AffineMatrix::constant(-a);
  m.add_identity(LinExpr::variable(t));
  o.problem.add_lmi(m);
  o.problem.set_objective(LinExpr::variable(t), Sense::Minimize);
  return o;
}

OracleProblem random_lambda_max() {
  RealMatrix a(5, 5);
  // Fixed entries; the expected value comes from the eigen solver.
  const double vals[15] = {0.3, -1.2, 0.5, 2.0, -0.7, 1.1, 0.4, -0.3, 0.9, 0.0, -1.5, 0.8, 0.2, 0.6, -0.4};
  int k = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) a(i, j) = a(j, i) = vals[k++];
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a);
  return lambda_max("lambda_max of a fixed 5x5", a, es.eigenvalues().maxCoeff());
}

OracleProblem simplex_lp() {
  OracleProblem o{"LP over the simplex", {}, -1.5};
  const double c[4] = {0.7, -1.5, 2.0, -0.2};
  const std::vector<int> y = o.problem.add_vars(4);
  LinExpr sum, obj;
  for (int i = 0; i < 4; ++i) {
    o.problem.add_nonnegative(LinExpr::variable(y[i]));
    sum += LinExpr::variable(y[i]);
    obj += LinExpr::variable(y[i], c[i]);
  }
  o.problem.add_equality(sum - 1.0);
  o.problem.set_objective(obj, Sense::Minimize);
  return o;
}

// max <J, X> s.t. tr X = 1, X_ij = 0 on the edges of the 5-cycle.
OracleProblem lovasz_c5() {
  OracleProblem o{"Lovasz theta of C5", {}, std::sqrt(5.0)};
  const AffineMatrix x = o.problem.add_psd_matrix(5);
  o.problem.add_equality(x.trace() - 1.0);
  for (int i = 0; i < 5; ++i) o.problem.add_equality(x(i, (i + 1) % 5));
  LinExpr sum;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) sum += x(i, j);
  o.problem.set_objective(sum, Sense::Maximize);
  return o;
}

// min x s.t. [[x, 1], [1, 4]] >= 0.
OracleProblem schur_bound() {
  OracleProblem o{"Schur complement bound", {}, 0.25};
  const int x = o.problem.add_var();
  AffineMatrix m(2);
  m(0, 0) = LinExpr::variable(x);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 4.0;
  o.problem.add_lmi(m);
  o.problem.set_objective(LinExpr::variable(x), Sense::Minimize);
  return o;
}

// min t s.t. t I - sigma_y >= 0 through the Hermitian embedding.
OracleProblem hermitian_lambda_max() {
  OracleProblem o{"lambda_max of sigma_y (complex)", {}, 1.0};
  const int t = o.problem.add_var();
  HermitianExpr h = HermitianExpr::constant(-pauli_y());
  h.re().add_identity(LinExpr::variable(t));
  o.problem.add_hermitian_lmi(h);
  o.problem.set_objective(LinExpr::variable(t), Sense::Minimize);
  return o;
}

// ||A||_1 = min tr P + tr N with P - N = A, P, N >= 0.
OracleProblem trace_norm() {
  RealMatrix a(3, 3);
  a << 1.0, 2.0, 0.0, 2.0, -1.0, 0.5, 0.0, 0.5, 0.3;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a);
  OracleProblem o{"trace norm of a fixed 3x3", {}, es.eigenvalues().cwiseAbs().sum()};
  const AffineMatrix p = o.problem.add_psd_matrix(3);
  const AffineMatrix n = o.problem.add_psd_matrix(3);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) o.problem.add_equality(p(i, j) - n(i, j) - a(i, j));
  o.problem.set_objective(p.trace() + n.trace(), Sense::Minimize);
  return o;
}

// Max-cut relaxation of the triangle: max sum_{i<j} (1 - X_ij)/2, diag X = 1.
OracleProblem maxcut_triangle() {
  OracleProblem o{"max-cut relaxation of K3", {}, 2.25};
  const AffineMatrix x = o.problem.add_psd_matrix(3);
  for (int i = 0; i < 3; ++i) o.problem.add_equality(x(i, i) - 1.0);
  LinExpr obj;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) obj += 0.5 - 0.5 * x(i, j);
  o.problem.set_objective(obj, Sense::Maximize);
  return o;
}

}  // namespace

std::vector<OracleProblem> solver_oracle_suite() {
  std::vector<OracleProblem> out;
  out.push_back(nonnegative_scalar());
  out.push_back(forced_trace());
  RealMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  out.push_back(lambda_max("lambda_max of sigma_x", sx, 1.0));
  out.push_back(random_lambda_max());
  out.push_back(simplex_lp());
  out.push_back(lovasz_c5());
  out.push_back(schur_bound());
  out.push_back(hermitian_lambda_max());
  out.push_back(trace_norm());
  out.push_back(maxcut_triangle());
  return out;
}

std::vector<SuiteOutcome> run_solver_oracle_suite() {
  std::vector<SuiteOutcome> out;
  for (const OracleProblem& o : solver_oracle_suite()) {
    const SdpSolution s = solve(o.problem);
    SuiteOutcome r;
    r.name = o.name;
    r.value = s.optimum;
    r.expected = o.expected;
    r.primal_residual = s.primal_residual;
    r.dual_residual = s.dual_residual;
    const double sign = o.problem.sense() == Sense::Minimize ? 1.0 : -1.0;
    r.duality_slack = sign * (s.primal_objective - s.dual_objective);
    r.optimal = s.optimal();
    out.push_back(r);
  }
  return out;
}

}  // namespace oracle
