#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

// Outcome of one randomized property suite: how many instances were
// checked, how many violated the property, and the worst slack observed
// (negative means violated).
struct SuiteReport {
  std::string name;
  int instances = 0;
  int failures = 0;
  double worst = 0.0;
  std::vector<std::string> notes;

  bool ok() const { return instances > 0 && failures == 0; }
};

// DI bounds non-decreasing from level 1 to 2, and level-2 feasibility of
// the quantum-set relaxation implying level-1 feasibility.
SuiteReport level_monotonicity(int instances, std::uint64_t seed);

// DI bounds never exceed the device-dependent quantity of the realization.
SuiteReport soundness_sandwich(int instances, std::uint64_t seed);

// SR = 0 iff an LHS model exists iff SW = 0.
SuiteReport lhs_equivalence(int instances, std::uint64_t seed);

// IR of the steering-equivalent observables equals SR^c.
SuiteReport ir_equals_src(int instances, std::uint64_t seed);

// Weak duality and residuals on the fixed solver suite, plus agreement
// with the known optima.
SuiteReport solver_suite(double residual_tol, double value_tol);

// Qualitative checks of the qutrit (I2233) and I3322 curves: zero bound
// without violation and monotone growth.
SuiteReport qutrit_curve(int points);
SuiteReport i3322_curve(int points);

}  // namespace oracle
