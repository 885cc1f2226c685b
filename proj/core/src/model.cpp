#include "ammkit/model.hpp"

#include <algorithm>
#include <map>

namespace ammkit {

LinExpr LinExpr::variable(int var, double coef) {
  LinExpr e;
  e.terms_.push_back({var, coef});
  return e;
}

LinExpr& LinExpr::add_term(int var, double coef) {
  terms_.push_back({var, coef});
  return *this;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  constant_ += o.constant_;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  for (const Term& t : o.terms_) terms_.push_back({t.var, -t.coef});
  constant_ -= o.constant_;
  return *this;
}

LinExpr& LinExpr::operator*=(double s) {
  for (Term& t : terms_) t.coef *= s;
  constant_ *= s;
  return *this;
}

LinExpr& LinExpr::compress() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (const Term& t : terms_) {
    if (!merged.empty() && merged.back().var == t.var)
      merged.back().coef += t.coef;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  terms_ = std::move(merged);
  return *this;
}

double LinExpr::evaluate(const RealVector& y) const {
  double v = constant_;
  for (const Term& t : terms_) v += t.coef * y(t.var);
  return v;
}

LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
LinExpr operator-(LinExpr a) { return a *= -1.0; }
LinExpr operator*(double s, LinExpr a) { return a *= s; }
LinExpr operator*(LinExpr a, double s) { return a *= s; }

AffineMatrix::AffineMatrix(int dim) : dim_(dim), entries_(dim * dim) {}

AffineMatrix AffineMatrix::constant(const RealMatrix& m) {
  AffineMatrix a(static_cast<int>(m.rows()));
  for (int r = 0; r < a.dim_; ++r)
    for (int c = 0; c < a.dim_; ++c) a(r, c) = LinExpr(m(r, c));
  return a;
}

AffineMatrix& AffineMatrix::operator+=(const AffineMatrix& o) {
  if (o.dim_ != dim_) throw DimensionError("AffineMatrix: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

AffineMatrix& AffineMatrix::operator-=(const AffineMatrix& o) {
  if (o.dim_ != dim_) throw DimensionError("AffineMatrix: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

AffineMatrix& AffineMatrix::operator*=(double s) {
  for (LinExpr& e : entries_) e *= s;
  return *this;
}

AffineMatrix& AffineMatrix::add_identity(const LinExpr& s) {
  for (int i = 0; i < dim_; ++i) (*this)(i, i) += s;
  return *this;
}

LinExpr AffineMatrix::trace() const {
  LinExpr t;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

RealMatrix AffineMatrix::evaluate(const RealVector& y) const {
  RealMatrix m(dim_, dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(r, c) = (*this)(r, c).evaluate(y);
  return m;
}

AffineMatrix operator+(AffineMatrix a, const AffineMatrix& b) { return a += b; }
AffineMatrix operator-(AffineMatrix a, const AffineMatrix& b) { return a -= b; }
AffineMatrix operator*(double s, AffineMatrix a) { return a *= s; }

AffineMatrix scale(const LinExpr& s, const RealMatrix& m) {
  AffineMatrix a(static_cast<int>(m.rows()));
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (m(r, c) != 0.0) a(r, c) = m(r, c) * s;
  return a;
}

HermitianExpr::HermitianExpr(int dim) : re_(dim), im_(dim) {}

HermitianExpr HermitianExpr::constant(const ComplexMatrix& m) {
  HermitianExpr h;
  h.re_ = AffineMatrix::constant(m.real());
  h.im_ = AffineMatrix::constant(m.imag());
  return h;
}

HermitianExpr& HermitianExpr::operator+=(const HermitianExpr& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

HermitianExpr& HermitianExpr::operator-=(const HermitianExpr& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

HermitianExpr& HermitianExpr::operator*=(double s) {
  re_ *= s;
  im_ *= s;
  return *this;
}

LinExpr HermitianExpr::trace() const { return re_.trace(); }

LinExpr HermitianExpr::trace_with(const ComplexMatrix& m) const {
  // Re tr(H M) = sum_{rc} Re(H_rc) Re(M_cr) - Im(H_rc) Im(M_cr).
  LinExpr t;
  const int d = dim();
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      const Complex mc = m(c, r);
      if (mc.real() != 0.0) t += mc.real() * re_(r, c);
      if (mc.imag() != 0.0) t -= mc.imag() * im_(r, c);
    }
  return t;
}

AffineMatrix HermitianExpr::embed() const {
  const int d = dim();
  AffineMatrix e(2 * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      e(r, c) = re_(r, c);
      e(r + d, c + d) = re_(r, c);
      e(r + d, c) = im_(r, c);
      e(r, c + d) = -im_(r, c);
    }
  return e;
}

ComplexMatrix HermitianExpr::evaluate(const RealVector& y) const {
  const RealMatrix a = re_.evaluate(y);
  const RealMatrix b = im_.evaluate(y);
  ComplexMatrix m(a.rows(), a.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) m(r, c) = Complex(a(r, c), b(r, c));
  return m;
}

HermitianExpr operator+(HermitianExpr a, const HermitianExpr& b) { return a += b; }
HermitianExpr operator-(HermitianExpr a, const HermitianExpr& b) { return a -= b; }
HermitianExpr operator*(double s, HermitianExpr a) { return a *= s; }

HermitianExpr scale(const LinExpr& s, const ComplexMatrix& m) {
  HermitianExpr h;
  h.re() = scale(s, RealMatrix(m.real()));
  h.im() = scale(s, RealMatrix(m.imag()));
  return h;
}

ComplexMatrix hermitian_from_embedded_dual(const RealMatrix& x) {
  const Eigen::Index d = x.rows() / 2;
  const RealMatrix p = x.topLeftCorner(d, d);
  const RealMatrix q = x.topRightCorner(d, d);
  const RealMatrix r = x.bottomRightCorner(d, d);
  ComplexMatrix f(d, d);
  const RealMatrix re = p + r;
  const RealMatrix im = q.transpose() - q;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) f(i, j) = Complex(re(i, j), im(i, j));
  return f;
}

int SdpProblem::add_var() { return num_vars_++; }

std::vector<int> SdpProblem::add_vars(int count) {
  std::vector<int> v(count);
  for (int& i : v) i = add_var();
  return v;
}

AffineMatrix SdpProblem::add_psd_matrix(int n) {
  AffineMatrix m(n);
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      const int v = add_var();
      m(r, c) = LinExpr::variable(v);
      m(c, r) = LinExpr::variable(v);
    }
  add_lmi(m);
  return m;
}

HermitianExpr SdpProblem::add_hermitian(int d) {
  HermitianExpr h(d);
  for (int r = 0; r < d; ++r) {
    h.re()(r, r) = LinExpr::variable(add_var());
    for (int c = r + 1; c < d; ++c) {
      const int a = add_var();
      const int b = add_var();
      h.re()(r, c) = LinExpr::variable(a);
      h.re()(c, r) = LinExpr::variable(a);
      h.im()(r, c) = LinExpr::variable(b);
      h.im()(c, r) = LinExpr::variable(b, -1.0);
    }
  }
  return h;
}

HermitianExpr SdpProblem::add_hermitian_psd(int d) {
  HermitianExpr h = add_hermitian(d);
  add_hermitian_lmi(h);
  return h;
}

void SdpProblem::add_equality(const LinExpr& expr) {
  LinExpr e = expr;
  e.compress();
  equalities_.push_back({e.terms(), -e.constant()});
}

void SdpProblem::add_hermitian_equality(const HermitianExpr& h) {
  const int d = h.dim();
  for (int r = 0; r < d; ++r)
    for (int c = r; c < d; ++c) {
      add_equality(0.5 * (h.re()(r, c) + h.re()(c, r)));
      if (c != r) add_equality(0.5 * (h.im()(r, c) - h.im()(c, r)));
    }
}

int SdpProblem::add_nonnegative(const LinExpr& expr) {
  AffineMatrix m(1);
  m(0, 0) = expr;
  return add_lmi(m);
}

int SdpProblem::add_lmi(const AffineMatrix& m) {
  const int n = m.dim();
  Lmi lmi;
  lmi.dim = n;
  lmi.constant = RealMatrix::Zero(n, n);
  std::map<int, std::vector<SparseEntry>> by_var;
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      LinExpr e = r == c ? m(r, r) : 0.5 * (m(r, c) + m(c, r));
      e.compress();
      lmi.constant(r, c) = e.constant();
      lmi.constant(c, r) = e.constant();
      for (const LinExpr::Term& t : e.terms()) by_var[t.var].push_back({r, c, t.coef});
    }
  for (auto& [var, entries] : by_var) lmi.coefficients.push_back({var, std::move(entries)});
  lmis_.push_back(std::move(lmi));
  return static_cast<int>(lmis_.size()) - 1;
}

int SdpProblem::add_hermitian_lmi(const HermitianExpr& h) { return add_lmi(h.embed()); }

void SdpProblem::set_objective(const LinExpr& expr, Sense sense) {
  objective_ = expr;
  objective_.compress();
  sense_ = sense;
}

}  // namespace ammkit
