#include "ammkit/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "ammkit/quantum.hpp"

namespace ammkit {

EntanglementResult er_ppt_result(const ComplexMatrix& rho, BipartiteDims dims) {
  const int n = dims.a * dims.b;
  if (rho.rows() != n || rho.cols() != n)
    throw DimensionError("er_ppt: state is " + shape_string(rho) + ", dims give " +
                         std::to_string(n));
  if (!is_psd(rho)) throw NotPsdError("er_ppt: state is not PSD");
  if (std::abs(trace(rho).real() - 1.0) > 1e-8)
    throw ValidationError("er_ppt: state does not have unit trace");

  SdpProblem p;
  const HermitianExpr omega = p.add_hermitian(n);
  p.add_hermitian_lmi(omega - HermitianExpr::constant(rho));

  // Partial transpose on A permutes entries (i a, j b) <-> (j a, i b).
  HermitianExpr pt(n);
  for (int i = 0; i < dims.a; ++i)
    for (int j = 0; j < dims.a; ++j)
      for (int k = 0; k < dims.b; ++k)
        for (int l = 0; l < dims.b; ++l) {
          const int r = i * dims.b + k, c = j * dims.b + l;
          const int rt = j * dims.b + k, ct = i * dims.b + l;
          pt.re()(r, c) = omega.re()(rt, ct);
          pt.im()(r, c) = omega.im()(rt, ct);
        }
  p.add_hermitian_lmi(pt);
  p.set_objective(omega.trace() - 1.0, Sense::Minimize);
  const SdpSolution sol = solve(p);
  require_acceptable(sol, "er_ppt");
  return {std::max(sol.optimum, 0.0), sol.value(omega), diagnostics(sol)};
}

double er_ppt(const ComplexMatrix& rho, BipartiteDims dims) {
  return er_ppt_result(rho, dims).value;
}

double er_isotropic_analytic(int d, double v) {
  if (d < 2) throw ValidationError("er_isotropic_analytic: d must be at least 2");
  const double lo = -1.0 / (d * d - 1.0);
  if (v < lo - 1e-12 || v > 1.0 + 1e-12)
    throw ValidationError("er_isotropic_analytic: visibility out of range");
  return std::max(0.0, (d - 1.0) / d * ((d + 1.0) * v - 1.0));
}

}  // namespace ammkit
