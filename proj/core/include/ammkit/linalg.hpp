#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ammkit {

using Complex = std::complex<double>;

// Dense complex matrix in row-major order. Every state, POVM element and
// moment matrix in the library is one of these.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPsdError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

enum class Subsystem { A, B };

struct BipartiteDims {
  int a = 0;
  int b = 0;
};

ComplexMatrix identity(int dim);
ComplexMatrix dagger(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);

// |v><v| for a column vector v.
ComplexMatrix projector(const Eigen::VectorXcd& v);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
bool is_psd(const ComplexMatrix& m, double tol = kPsdTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Traces out `over` from an operator on C^{dA} (x) C^{dB}.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims,
                            Subsystem over);

// Transposes the tensor factor `on`; an involution.
ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims,
                                Subsystem on);

// Operator on C^{dB} (x) C^{dA} with the two factors exchanged.
ComplexMatrix swap_subsystems(const ComplexMatrix& m, BipartiteDims dims);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

// Throws NotHermitianError if m deviates from m^dagger by more than 1e-10.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);
double max_eigenvalue(const ComplexMatrix& m);

// M^{-1/2} for PSD M. With `pseudo`, eigenvalues below 1e-9 * lambda_max are
// treated as zero and left out, so result * M * result is the projector onto
// range(M). Without it a singular input is rejected.
ComplexMatrix inv_sqrt_psd(const ComplexMatrix& m, bool pseudo);

// Orthonormal basis (as columns) of range(M) for PSD M, same cutoff as above.
ComplexMatrix range_basis(const ComplexMatrix& m);

std::string shape_string(const ComplexMatrix& m);

}  // namespace ammkit
