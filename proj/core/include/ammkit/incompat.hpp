#pragma once

#include <vector>

#include "ammkit/quantum.hpp"
#include "ammkit/solver.hpp"

namespace ammkit {

struct IncompatResult {
  double value = 0.0;
  // Parent POVM elements G_lambda (or their unnormalized counterparts),
  // one per deterministic strategy.
  std::vector<ComplexMatrix> parent;
  SolveDiagnostics diagnostics;
};

struct JointMeasurability {
  bool jointly_measurable = false;
  // Smallest s with -sI <= E_{a|x} - sum_l D(a|x,l) G_l <= sI, sum_l G_l = I.
  double residual = 0.0;
  std::vector<ComplexMatrix> parent;
  SolveDiagnostics diagnostics;
};

JointMeasurability is_jointly_measurable(const MeasurementAssemblage& m, double tol = 1e-7);

// min (1/d) sum_l tr G_l - 1  s.t.  sum_l D(a|x,l) G_l >= E_{a|x}, G_l >= 0,
// sum_l G_l proportional to the identity.
IncompatResult incompatibility_robustness(const MeasurementAssemblage& m);

// 1 - max (1/d) sum_l tr G_l  s.t.  E_{a|x} >= sum_l D(a|x,l) G_l, G_l >= 0,
// sum_l G_l proportional to the identity.
IncompatResult incompatibility_weight(const MeasurementAssemblage& m);

}  // namespace ammkit
