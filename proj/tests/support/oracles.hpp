#pragma once

// Reference computations that avoid the library code paths they check:
// explicit index loops, closed forms and brute force.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "ammkit/amm.hpp"
#include "ammkit/bell.hpp"
#include "ammkit/npa.hpp"
#include "ammkit/quantum.hpp"

namespace oracle {

using ammkit::ComplexMatrix;

// Closed forms.
double er_isotropic(int d, double v);                   // max{0, (d-1)/d ((d+1)v - 1)}
double chsh_isotropic_value(double v);                  // 2 sqrt2 v
double nr_chsh_isotropic(double v);                     // (sqrt2 v - 1)(sqrt2 - 1), v >= 1/sqrt2
double er_chsh_linear(double t);                        // (t - 2)/(2 sqrt2 - 2)
double er_elegant_linear(double t);                     // (t - 6)/(4 sqrt3 - 6)
double generalized_sr_zx();                             // 3 - 2 sqrt2

// Element-wise partial transpose on A: <ij|M^TA|kl> = <kj|M|il>.
ComplexMatrix partial_transpose_a(const ComplexMatrix& m, int da, int db);

// Smallest eigenvalue through the characteristic route of Eigen's generic
// complex solver (not the Hermitian one the library uses).
double min_eig_generic(const ComplexMatrix& m);

// Local bound by enumerating every pair of response functions directly.
double local_bound_bruteforce(const ammkit::BellFunctional& f);

// E_xy from the table, CHSH as -E00 + E01 + E10 + E11.
double chsh_from_table(const ammkit::Correlation& p);

// tr(rho W_i^dagger W_j) with W built by multiplying the measurement
// matrices letter by letter (no symbolic reduction).
ComplexMatrix moment_matrix_direct(const ammkit::AmmTemplate& t, const ComplexMatrix& rho,
                                   const ammkit::MeasurementAssemblage& m);

// <A_i^dagger A_k (x) B_j^dagger B_l> by explicit Kronecker products.
ComplexMatrix bipartite_moments_direct(const ammkit::BipartiteTemplate& t, const ComplexMatrix& rho,
                                       const ammkit::MeasurementAssemblage& alice,
                                       const ammkit::MeasurementAssemblage& bob);

// Randomized instances with a fixed seed.
class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi);
  std::array<double, 3> bloch();
  // Ginibre density matrix of the given rank.
  ComplexMatrix density(int dim, int rank);
  // Hermitian with standard normal entries.
  ComplexMatrix hermitian(int dim);
  ComplexMatrix unitary(int dim);
  // Convex mixture of `terms` random product states.
  ComplexMatrix separable(int da, int db, int terms);
  ammkit::MeasurementAssemblage qubit_projective(int settings);
  // Rank-one projective measurements in random bases.
  ammkit::MeasurementAssemblage projective(int dim, int settings);

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oracle
