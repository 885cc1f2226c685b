#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ammkit/quantum.hpp"

namespace ammkit {

// sum_{xyab} beta[x][y][a][b] P(a,b|x,y).
struct BellFunctional {
  std::string name;
  Scenario scenario;
  std::vector<double> coefficients;  // indexed like a bipartite Correlation
  double local_bound = 0.0;
  std::optional<double> quantum_bound;

  BellFunctional() = default;
  BellFunctional(std::string name_, Scenario s);

  double& coef(int x, int y, int a, int b);
  double coef(int x, int y, int a, int b) const;
};

double bell_value(const BellFunctional& f, const Correlation& p);

// Maximum over deterministic local strategies.
double compute_local_bound(const BellFunctional& f);

// -E00 + E01 + E10 + E11 with E_xy = sum_ab (-1)^(a+b) P(a,b|x,y);
// local bound 2, quantum 2 sqrt 2.
BellFunctional chsh();
// P(00|00)+P(00|01)+P(00|10)-P(00|11)-P_A(0|0)-P_B(0|0) <= 0.
BellFunctional clauser_horne();
// Four settings for Alice, three for Bob; local bound 6, quantum 4 sqrt 3.
BellFunctional elegant();
// Collins-Gisin I3322 in probability form; local bound 0, qubit value 1/4.
BellFunctional i3322();
// Three-outcome CGLMP expression; local bound 2.
BellFunctional i2233();

// Largest CHSH value over the eight relabelings of inputs and outputs
// (binary scenarios with two settings per side).
double max_chsh_value(const Correlation& p);

// Analytic CHSH-optimal qubit settings for |Phi+> under chsh().
MeasurementAssemblage chsh_alice_settings();
MeasurementAssemblage chsh_bob_settings();

struct SeesawOptions {
  int restarts = 20;
  std::uint64_t seed = 20240611;
  int max_sweeps = 300;
  double tol = 1e-11;
};

struct SeesawResult {
  MeasurementAssemblage alice;
  MeasurementAssemblage bob;
  double value = 0.0;
  bool converged = false;
  int best_restart = -1;
};

// Alternating optimization of local measurements for a fixed state on
// C^{dA} (x) C^{dB}. The value never decreases across sweeps.
SeesawResult seesaw_optimize(const BellFunctional& f, const ComplexMatrix& rho,
                             BipartiteDims dims, const SeesawOptions& opts = {});

// Optimal measurements for one party with the other held fixed.
MeasurementAssemblage best_response_bob(const BellFunctional& f, const ComplexMatrix& rho,
                                        BipartiteDims dims, const MeasurementAssemblage& alice);
MeasurementAssemblage best_response_alice(const BellFunctional& f, const ComplexMatrix& rho,
                                          BipartiteDims dims, const MeasurementAssemblage& bob);

}  // namespace ammkit
