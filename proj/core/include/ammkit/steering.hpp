#pragma once

#include <vector>

#include "ammkit/quantum.hpp"
#include "ammkit/solver.hpp"

namespace ammkit {

struct SteeringResult {
  double value = 0.0;
  // Optimal rho_lambda / sigma_lambda, one per deterministic strategy.
  std::vector<ComplexMatrix> hidden_states;
  SolveDiagnostics diagnostics;
};

struct LhsModel {
  bool feasible = false;
  // Smallest s with -sI <= rho_{a|x} - sum_l D(a|x,l) sigma_l <= sI.
  double residual = 0.0;
  std::vector<ComplexMatrix> hidden_states;
  SolveDiagnostics diagnostics;
};

// Decides whether rho_{a|x} = sum_l D(a|x,l) sigma_l with sigma_l >= 0.
LhsModel has_lhs_model(const Assemblage& a, double tol = 1e-7);

// min sum_l tr(rho_l) - 1  s.t.  sum_l D(a|x,l) rho_l >= rho_{a|x}, rho_l >= 0.
SteeringResult steering_robustness(const Assemblage& a);

// As above plus sum_l sigma_l = tr(sum_l sigma_l) * rho_B.
SteeringResult consistent_steering_robustness(const Assemblage& a);

// 1 - max sum_l tr(rho_l)  s.t.  rho_{a|x} >= sum_l D(a|x,l) rho_l, rho_l >= 0.
SteeringResult steerable_weight(const Assemblage& a);

// Witness read off the optimal dual of the robustness SDP: every LHS
// assemblage obeys sum_{ax} tr(F_{a|x} rho_{a|x}) <= local_bound.
struct SteeringInequality {
  std::vector<std::vector<ComplexMatrix>> f;  // [x][a]
  double local_bound = 0.0;
  double value = 0.0;  // on the assemblage it was built from

  double evaluate(const Assemblage& a) const;
  // value / local_bound - 1: a lower bound on the robustness.
  double robustness_bound() const { return value / local_bound - 1.0; }
};

SteeringInequality steering_inequality(const Assemblage& a);

// B_{a|x} = rho_B^{-1/2} rho_{a|x} rho_B^{-1/2} in the ambient space;
// sum_a B_{a|x} is the projector onto range(rho_B).
MeasurementAssemblage steering_equivalent_observables(const Assemblage& a);

// The same operators expressed in an orthonormal basis of range(rho_B), so
// they form a complete measurement on that subspace.
MeasurementAssemblage steering_equivalent_observables_on_range(const Assemblage& a);

}  // namespace ammkit
