#include "ammkit/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ammkit {

namespace {

constexpr double kRangeCutoff = 1e-9;

void require_bipartite_square(const ComplexMatrix& m, BipartiteDims dims,
                              const char* what) {
  if (dims.a < 1 || dims.b < 1 || m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dims.a) * dims.b) {
    throw DimensionError(std::string(what) + ": expected a " +
                         std::to_string(dims.a * dims.b) +
                         "-square matrix, got " + shape_string(m));
  }
}

}  // namespace

std::string shape_string(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

ComplexMatrix identity(int dim) {
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

Complex trace(const ComplexMatrix& m) { return m.trace(); }

ComplexMatrix projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

bool is_psd(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, std::max(tol, kHermitianTol)) &&
         min_eigenvalue(m) >= -tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims,
                            Subsystem over) {
  require_bipartite_square(m, dims, "partial_trace");
  const int da = dims.a, db = dims.b;
  if (over == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (int i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
    return out;
  }
  ComplexMatrix out(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) out(i, j) = m.block(i * db, j * db, db, db).trace();
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims,
                                Subsystem on) {
  require_bipartite_square(m, dims, "partial_transpose");
  const int da = dims.a, db = dims.b;
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      auto blk = m.block(i * db, j * db, db, db);
      if (on == Subsystem::A)
        out.block(j * db, i * db, db, db) = blk;
      else
        out.block(i * db, j * db, db, db) = blk.transpose();
    }
  return out;
}

ComplexMatrix swap_subsystems(const ComplexMatrix& m, BipartiteDims dims) {
  require_bipartite_square(m, dims, "swap_subsystems");
  const int da = dims.a, db = dims.b;
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) out(j * da + i, l * da + k) = m(i * db + j, k * db + l);
  return out;
}

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  if (!is_hermitian(m, kHermitianTol))
    throw NotHermitianError("eig_hermitian: input " + shape_string(m) +
                            " is not Hermitian");
  // Work on the exactly Hermitian part so the solver sees a symmetric input.
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& m) {
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const ComplexMatrix& m) {
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& m, bool pseudo) {
  const HermitianEigen e = eig_hermitian(m);
  const Eigen::Index n = e.values.size();
  if (n > 0 && e.values(0) < -kPsdTol)
    throw NotPsdError("inv_sqrt_psd: eigenvalue " + std::to_string(e.values(0)) +
                      " is negative");
  const double lmax = n > 0 ? std::max(e.values(n - 1), 0.0) : 0.0;
  const double cutoff = kRangeCutoff * lmax;
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lam = e.values(k);
    if (lam <= cutoff || lam <= 0.0) {
      if (!pseudo)
        throw NotPsdError("inv_sqrt_psd: matrix is singular; use pseudo mode");
      continue;
    }
    const Eigen::VectorXcd v = e.vectors.col(k);
    out += (1.0 / std::sqrt(lam)) * (v * v.adjoint());
  }
  return out;
}

ComplexMatrix range_basis(const ComplexMatrix& m) {
  const HermitianEigen e = eig_hermitian(m);
  const Eigen::Index n = e.values.size();
  const double lmax = n > 0 ? std::max(e.values(n - 1), 0.0) : 0.0;
  const double cutoff = kRangeCutoff * lmax;
  Eigen::Index first = 0;
  while (first < n && (e.values(first) <= cutoff || e.values(first) <= 0.0))
    ++first;
  return e.vectors.rightCols(n - first);
}

}  // namespace ammkit
