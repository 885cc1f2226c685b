#pragma once

#include "ammkit/linalg.hpp"
#include "ammkit/solver.hpp"

namespace ammkit {

struct EntanglementResult {
  double value = 0.0;
  ComplexMatrix omega;  // optimal omega >= rho with PPT omega
  SolveDiagnostics diagnostics;
};

// min tr(omega) - 1  s.t.  omega >= rho, omega^{T_A} >= 0. A lower bound on
// the generalized robustness, exact for 2x2 and 2x3.
EntanglementResult er_ppt_result(const ComplexMatrix& rho, BipartiteDims dims);
double er_ppt(const ComplexMatrix& rho, BipartiteDims dims);

// Generalized robustness of the d x d isotropic state of visibility v.
double er_isotropic_analytic(int d, double v);

}  // namespace ammkit
