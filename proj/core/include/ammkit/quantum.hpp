#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ammkit/linalg.hpp"

namespace ammkit {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Settings and outcome counts per party (2 or 3 parties). Outcome counts
// are uniform across a party's settings.
struct Scenario {
  std::vector<int> settings;
  std::vector<int> outcomes;

  static Scenario bipartite(int nx, int ny, int na, int nb);
  static Scenario tripartite(int nx, int ny, int nz, int na, int nb, int nc);

  int parties() const { return static_cast<int>(settings.size()); }
  void validate() const;
  bool operator==(const Scenario&) const = default;
};

// POVMs {E_{a|x}} of one party; povms[x][a].
struct MeasurementAssemblage {
  std::vector<std::vector<ComplexMatrix>> povms;

  int num_settings() const { return static_cast<int>(povms.size()); }
  int num_outcomes() const { return povms.empty() ? 0 : static_cast<int>(povms[0].size()); }
  int dim() const;

  // Positivity, completeness and uniform shapes; throws ValidationError.
  void validate(double tol = 1e-9) const;
  bool is_projective(double tol = 1e-8) const;
};

// Conditional states {rho_{a|x}} on the trusted side; states[x][a].
struct Assemblage {
  std::vector<std::vector<ComplexMatrix>> states;

  int num_settings() const { return static_cast<int>(states.size()); }
  int num_outcomes() const { return states.empty() ? 0 : static_cast<int>(states[0].size()); }
  int dim() const;

  // sum_a rho_{a|x} for setting x (0 by default).
  ComplexMatrix reduced_state(int x = 0) const;
  // Positivity, unit total trace per x, no-signalling across x.
  void validate(double tol = 1e-8) const;
};

// Charlie's conditional states {rho_{ab|xy}}; states[x][y][a][b].
struct TripartiteAssemblage {
  int nx = 0, ny = 0, na = 0, nb = 0;
  std::vector<ComplexMatrix> states;

  TripartiteAssemblage() = default;
  TripartiteAssemblage(int nx_, int ny_, int na_, int nb_, int dim);

  ComplexMatrix& at(int x, int y, int a, int b);
  const ComplexMatrix& at(int x, int y, int a, int b) const;
  int dim() const;

  // Positivity, unit trace per (x,y), and the three marginal-consistency
  // families: sum_a independent of x, sum_b independent of y, sum_ab
  // independent of (x,y).
  void validate(double tol = 1e-8) const;
};

class Correlation;
Correlation marginal_correlation(const TripartiteAssemblage& t);

// P(a,b|x,y) or P(a,b,c|x,y,z), stored densely.
class Correlation {
 public:
  Correlation() = default;
  explicit Correlation(Scenario s);

  const Scenario& scenario() const { return scenario_; }
  int nx() const { return scenario_.settings[0]; }
  int ny() const { return scenario_.settings[1]; }
  int na() const { return scenario_.outcomes[0]; }
  int nb() const { return scenario_.outcomes[1]; }

  double& operator()(int a, int b, int x, int y);
  double operator()(int a, int b, int x, int y) const;
  double& operator()(int a, int b, int c, int x, int y, int z);
  double operator()(int a, int b, int c, int x, int y, int z) const;

  // Bipartite marginals, taken at the first setting of the other party.
  double alice_marginal(int a, int x) const;
  double bob_marginal(int b, int y) const;

  // Largest violation of positivity, normalization or no-signalling.
  double max_violation() const;
  void validate(double tol = 1e-9) const;

  // Exchanges the roles of the first two parties.
  Correlation swapped() const;

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

 private:
  std::size_t index2(int a, int b, int x, int y) const;
  std::size_t index3(int a, int b, int c, int x, int y, int z) const;

  Scenario scenario_;
  std::vector<double> data_;
};

ComplexMatrix maximally_entangled(int d);
// v |Phi+><Phi+| + (1 - v) I / d^2, valid for -1/(d^2-1) <= v <= 1.
ComplexMatrix isotropic_state(int d, double v);
// (cos t |00> + sin t |11>)(h.c.), 0 < t <= pi/4.
ComplexMatrix pure_partially_entangled(double theta);

// {(I + n.sigma)/2, (I - n.sigma)/2}; n must be a unit vector.
std::vector<ComplexMatrix> qubit_projective(const std::array<double, 3>& bloch);
MeasurementAssemblage qubit_measurements(const std::vector<std::array<double, 3>>& blochs);
// Rank-one projectors onto the columns of a unitary, one setting.
std::vector<ComplexMatrix> basis_measurement(const ComplexMatrix& unitary);

Correlation born_correlation(const ComplexMatrix& rho, const MeasurementAssemblage& alice,
                             const MeasurementAssemblage& bob);
Correlation born_correlation(const ComplexMatrix& rho, const MeasurementAssemblage& alice,
                             const MeasurementAssemblage& bob,
                             const MeasurementAssemblage& charlie);

// rho_{a|x} = tr_A[(E_{a|x} (x) I) rho].
Assemblage assemblage_from_state(const ComplexMatrix& rho, const MeasurementAssemblage& alice,
                                 int dim_b);
// P(a,b|x,y) = tr(rho_{a|x} E_{b|y}).
Correlation correlation_from_assemblage(const Assemblage& a, const MeasurementAssemblage& bob);

// rho_{ab|xy} = tr_AB[(E_{a|x} (x) E_{b|y} (x) I) rho].
TripartiteAssemblage tripartite_assemblage_from_state(const ComplexMatrix& rho,
                                                      const MeasurementAssemblage& alice,
                                                      const MeasurementAssemblage& bob,
                                                      int dim_c);

// Deterministic response functions: strategy[lambda][x] = outcome, in
// lexicographic order with setting 0 most significant.
using Strategy = std::vector<int>;
std::vector<Strategy> deterministic_strategies(int n_settings, int n_outcomes);
inline constexpr double kMaxStrategies = 1e6;

// Post-quantum steering example: rho_{ab|xy} = rho_hat/2 when a xor b
// equals 1 xor (x*y), and 0 otherwise (0-based labels).
TripartiteAssemblage pr_box_assemblage(const ComplexMatrix& rho_hat);

}  // namespace ammkit
