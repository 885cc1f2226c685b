#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ammkit/model.hpp"

namespace ammkit {

enum class SdpStatus {
  Optimal,
  PrimalInfeasible,  // the constraints of the (min/max) problem admit no point
  DualInfeasible,    // the objective is unbounded over the feasible set
  MaxIterations,
  Stalled,           // no further progress; best iterate returned
};

std::string to_string(SdpStatus s);

struct SolverOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iterations = 200;
  double step_fraction = 0.95;
  // Iterations of stalled residuals (> stall_residual while mu < stall_mu)
  // after which the problem is declared infeasible.
  int stall_window = 30;
  double stall_residual = 1e-5;
  double stall_mu = 1e-10;
  bool verbose = false;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::MaxIterations;
  double optimum = 0.0;          // objective at y, in the caller's sense
  double primal_objective = 0.0; // caller's sense
  double dual_objective = 0.0;   // caller's sense
  RealVector primal_point;       // y
  RealVector dual_point;         // multipliers of the equalities
  std::vector<RealMatrix> lmi_duals;  // X_k, one per LMI
  std::vector<RealMatrix> lmi_values; // F_k(y)
  double gap = 0.0;              // relative duality gap
  double primal_residual = 0.0;  // relative LMI + equality residual
  double dual_residual = 0.0;    // relative stationarity residual
  int iterations = 0;

  bool optimal() const { return status == SdpStatus::Optimal; }
  // Optimal, or stopped early with gap and residuals within `tol`.
  bool acceptable(double tol = 1e-6) const;

  double value(const LinExpr& e) const { return e.evaluate(primal_point); }
  RealMatrix value(const AffineMatrix& m) const { return m.evaluate(primal_point); }
  ComplexMatrix value(const HermitianExpr& h) const { return h.evaluate(primal_point); }
};

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options = {});

// Compact record of how a solve ended, carried by every quantifier result.
struct SolveDiagnostics {
  SdpStatus status = SdpStatus::MaxIterations;
  double gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
};

SolveDiagnostics diagnostics(const SdpSolution& s);

// Thrown when a quantifier's SDP ends without an acceptable optimum.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, SolveDiagnostics d)
      : std::runtime_error(what + " (" + to_string(d.status) + ")"), diag(d) {}
  SolveDiagnostics diag;
};

// Throws SolverFailure unless the solution is acceptable at `tol`.
void require_acceptable(const SdpSolution& s, const std::string& what, double tol = 1e-6);

// Writes the problem in SDPA sparse format; see docs/sdp_dump_format.md.
void write_sdpa(const SdpProblem& problem, std::ostream& out);
void write_sdpa(const SdpProblem& problem, const std::string& path);

}  // namespace ammkit
