#pragma once

#include <utility>
#include <vector>

#include "ammkit/linalg.hpp"

namespace ammkit {

// Affine scalar expression c + sum_k coef_k * y_{var_k} over the decision
// variables of one SdpProblem.
class LinExpr {
 public:
  struct Term {
    int var;
    double coef;
  };

  LinExpr() = default;
  LinExpr(double constant) : constant_(constant) {}  // NOLINT: implicit on purpose

  static LinExpr variable(int var, double coef = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  double constant() const { return constant_; }
  bool is_constant() const { return terms_.empty(); }

  LinExpr& add_term(int var, double coef);
  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(double s);

  // Merges repeated variables and drops exact zeros.
  LinExpr& compress();

  double evaluate(const RealVector& y) const;

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

LinExpr operator+(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a);
LinExpr operator*(double s, LinExpr a);
LinExpr operator*(LinExpr a, double s);

// Square matrix of affine expressions. Used symmetric for LMIs.
class AffineMatrix {
 public:
  AffineMatrix() = default;
  explicit AffineMatrix(int dim);
  static AffineMatrix constant(const RealMatrix& m);

  int dim() const { return dim_; }
  LinExpr& operator()(int r, int c) { return entries_[r * dim_ + c]; }
  const LinExpr& operator()(int r, int c) const { return entries_[r * dim_ + c]; }

  AffineMatrix& operator+=(const AffineMatrix& o);
  AffineMatrix& operator-=(const AffineMatrix& o);
  AffineMatrix& operator*=(double s);
  // Adds s * I.
  AffineMatrix& add_identity(const LinExpr& s);

  LinExpr trace() const;
  RealMatrix evaluate(const RealVector& y) const;

 private:
  int dim_ = 0;
  std::vector<LinExpr> entries_;
};

AffineMatrix operator+(AffineMatrix a, const AffineMatrix& b);
AffineMatrix operator-(AffineMatrix a, const AffineMatrix& b);
AffineMatrix operator*(double s, AffineMatrix a);
// s * M for a scalar expression s and a constant matrix M.
AffineMatrix scale(const LinExpr& s, const RealMatrix& m);

// Complex Hermitian matrix of affine expressions, kept as real part
// (symmetric) and imaginary part (antisymmetric).
class HermitianExpr {
 public:
  HermitianExpr() = default;
  explicit HermitianExpr(int dim);
  static HermitianExpr constant(const ComplexMatrix& m);

  int dim() const { return re_.dim(); }
  AffineMatrix& re() { return re_; }
  AffineMatrix& im() { return im_; }
  const AffineMatrix& re() const { return re_; }
  const AffineMatrix& im() const { return im_; }

  HermitianExpr& operator+=(const HermitianExpr& o);
  HermitianExpr& operator-=(const HermitianExpr& o);
  HermitianExpr& operator*=(double s);

  // Real part of the trace; the imaginary part vanishes identically.
  LinExpr trace() const;
  // Re tr(H * M) for a constant Hermitian M.
  LinExpr trace_with(const ComplexMatrix& m) const;
  // [[Re, -Im], [Im, Re]]; PSD iff this is PSD, trace doubles.
  AffineMatrix embed() const;
  ComplexMatrix evaluate(const RealVector& y) const;

 private:
  AffineMatrix re_;
  AffineMatrix im_;
};

HermitianExpr operator+(HermitianExpr a, const HermitianExpr& b);
HermitianExpr operator-(HermitianExpr a, const HermitianExpr& b);
HermitianExpr operator*(double s, HermitianExpr a);
// s * M for a scalar expression s and a constant Hermitian matrix M.
HermitianExpr scale(const LinExpr& s, const ComplexMatrix& m);

// Inverse of HermitianExpr::embed on a 2d x 2d symmetric dual block X:
// returns F with <embed(H), X> == Re tr(H F) for every Hermitian H.
ComplexMatrix hermitian_from_embedded_dual(const RealMatrix& x);

enum class Sense { Minimize, Maximize };

// Conic program in linear-matrix-inequality form:
//   min/max  c^T y + c0   s.t.  F_k(y) >= 0 (PSD),  E y = e,
// with y a vector of free real variables. PSD matrix variables are
// expressed as symmetric LMIs over their entries.
class SdpProblem {
 public:
  struct SparseEntry {
    int row;
    int col;
    double value;
  };
  struct VarCoefficient {
    int var;
    std::vector<SparseEntry> entries;  // upper triangle, row <= col
  };
  struct Lmi {
    int dim = 0;
    RealMatrix constant;
    std::vector<VarCoefficient> coefficients;
  };
  struct Equality {
    std::vector<LinExpr::Term> terms;
    double rhs = 0.0;
  };

  int add_var();
  std::vector<int> add_vars(int count);
  int num_vars() const { return num_vars_; }

  // Symmetric n x n variable block constrained PSD.
  AffineMatrix add_psd_matrix(int n);
  // Complex Hermitian d x d variable (d^2 real unknowns), unconstrained.
  HermitianExpr add_hermitian(int d);
  // Same, constrained PSD through its real embedding.
  HermitianExpr add_hermitian_psd(int d);

  // expr == 0.
  void add_equality(const LinExpr& expr);
  // Entrywise equality of two Hermitian expressions.
  void add_hermitian_equality(const HermitianExpr& h);
  // expr >= 0.
  int add_nonnegative(const LinExpr& expr);
  // Symmetrized m >= 0. Returns the LMI index for dual lookup.
  int add_lmi(const AffineMatrix& m);
  int add_hermitian_lmi(const HermitianExpr& h);

  void set_objective(const LinExpr& expr, Sense sense);

  const std::vector<Lmi>& lmis() const { return lmis_; }
  const std::vector<Equality>& equalities() const { return equalities_; }
  const LinExpr& objective() const { return objective_; }
  Sense sense() const { return sense_; }

 private:
  int num_vars_ = 0;
  std::vector<Lmi> lmis_;
  std::vector<Equality> equalities_;
  LinExpr objective_;
  Sense sense_ = Sense::Minimize;
};

}  // namespace ammkit
