#include "ammkit/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ammkit {

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::PrimalInfeasible: return "primal_infeasible";
    case SdpStatus::DualInfeasible: return "dual_infeasible";
    case SdpStatus::MaxIterations: return "max_iterations";
    case SdpStatus::Stalled: return "stalled";
  }
  return "unknown";
}

bool SdpSolution::acceptable(double tol) const {
  if (status == SdpStatus::Optimal) return true;
  if (status != SdpStatus::MaxIterations && status != SdpStatus::Stalled) return false;
  return gap <= tol && primal_residual <= tol && dual_residual <= tol;
}

SolveDiagnostics diagnostics(const SdpSolution& s) {
  return {s.status, s.gap, s.primal_residual, s.dual_residual, s.iterations};
}

void require_acceptable(const SdpSolution& s, const std::string& what, double tol) {
  if (!s.acceptable(tol)) throw SolverFailure(what, diagnostics(s));
}

namespace {

struct Entry {
  int row;
  int col;
  double value;
};

// One variable's coefficient matrix inside a block, stored with both
// triangles so products need no special casing.
struct Coefficient {
  int var;  // compact index
  std::vector<Entry> entries;
  std::vector<int> rows;  // distinct rows touched
};

struct Block {
  int n = 0;
  int source = -1;  // index into the caller's LMI list
  RealMatrix f0;
  std::vector<Coefficient> coefs;
};

double inner(const Coefficient& f, const RealMatrix& s) {
  double v = 0.0;
  for (const Entry& e : f.entries) v += e.value * s(e.row, e.col);
  return v;
}

double inner(const RealMatrix& a, const RealMatrix& b) {
  return (a.array() * b.array()).sum();
}

RealMatrix sym(const RealMatrix& a) { return 0.5 * (a + a.transpose()); }

// Largest alpha such that x + alpha * dx stays PSD (infinity if unbounded).
double max_step(const Eigen::LLT<RealMatrix>& chol, const RealMatrix& dx) {
  const auto l = chol.matrixL();
  RealMatrix w = l.solve(dx);
  w = l.solve(w.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym(w), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double min_eig(const RealMatrix& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

class InteriorPoint {
 public:
  InteriorPoint(const SdpProblem& p, const SolverOptions& o) : prob_(p), opt_(o) {}

  SdpSolution run();

 private:
  bool presolve(SdpSolution& out);
  void build_schur();
  void affine_sum(const RealVector& dy, std::vector<RealMatrix>& out) const;
  RealVector apply_adjoint(const std::vector<RealMatrix>& s) const;
  void direction(const std::vector<RealMatrix>& t, const std::vector<RealMatrix>& rd,
                 const RealVector& rp, const RealVector& re, RealVector& dy,
                 RealVector& dw, std::vector<RealMatrix>& dz,
                 std::vector<RealMatrix>& dx);
  void finish(SdpSolution& out, SdpStatus status);

  const SdpProblem& prob_;
  SolverOptions opt_;

  // Compact problem.
  int m_ = 0;
  std::vector<int> var_of_;   // compact -> original
  std::vector<int> compact_;  // original -> compact or -1
  RealVector c_;
  double sign_ = 1.0;
  std::vector<Block> blocks_;
  RealMatrix e_mat_;
  RealVector e_rhs_;
  std::vector<int> eq_source_;
  RealVector eq_scale_;
  int n_total_ = 0;

  // Iterate.
  RealVector y_, w_;
  std::vector<RealMatrix> x_, z_, zinv_;
  RealMatrix schur_;
  Eigen::PartialPivLU<RealMatrix> kkt_;
  RealVector kkt_scale_;

  // Best iterate so far.
  double best_merit_ = std::numeric_limits<double>::infinity();
  RealVector best_y_, best_w_;
  std::vector<RealMatrix> best_x_;
  double best_gap_ = 0, best_pinf_ = 0, best_dinf_ = 0;
};

bool InteriorPoint::presolve(SdpSolution& out) {
  const int n_orig = prob_.num_vars();
  sign_ = prob_.sense() == Sense::Maximize ? -1.0 : 1.0;
  RealVector c_orig = RealVector::Zero(n_orig);
  for (const auto& t : prob_.objective().terms()) c_orig(t.var) += sign_ * t.coef;

  std::vector<char> used(n_orig, 0);
  for (const auto& lmi : prob_.lmis())
    for (const auto& vc : lmi.coefficients) used[vc.var] = 1;
  for (const auto& eq : prob_.equalities())
    for (const auto& t : eq.terms)
      if (t.coef != 0.0) used[t.var] = 1;

  compact_.assign(n_orig, -1);
  for (int i = 0; i < n_orig; ++i) {
    if (used[i]) {
      compact_[i] = static_cast<int>(var_of_.size());
      var_of_.push_back(i);
    } else if (c_orig(i) != 0.0) {
      // A variable free of all constraints with nonzero cost.
      finish(out, SdpStatus::DualInfeasible);
      return false;
    }
  }
  m_ = static_cast<int>(var_of_.size());
  c_.resize(m_);
  for (int j = 0; j < m_; ++j) c_(j) = c_orig(var_of_[j]);

  const auto& lmis = prob_.lmis();
  for (int k = 0; k < static_cast<int>(lmis.size()); ++k) {
    const auto& lmi = lmis[k];
    if (lmi.coefficients.empty()) {
      const double scale = 1.0 + lmi.constant.norm();
      if (min_eig(lmi.constant) < -opt_.feas_tol * scale) {
        finish(out, SdpStatus::PrimalInfeasible);
        return false;
      }
      continue;
    }
    Block b;
    b.n = lmi.dim;
    b.source = k;
    b.f0 = lmi.constant;
    for (const auto& vc : lmi.coefficients) {
      Coefficient cf;
      cf.var = compact_[vc.var];
      for (const auto& e : vc.entries) {
        if (e.value == 0.0) continue;
        cf.entries.push_back({e.row, e.col, e.value});
        if (e.row != e.col) cf.entries.push_back({e.col, e.row, e.value});
      }
      if (cf.entries.empty()) continue;
      for (const Entry& e : cf.entries) cf.rows.push_back(e.row);
      std::sort(cf.rows.begin(), cf.rows.end());
      cf.rows.erase(std::unique(cf.rows.begin(), cf.rows.end()), cf.rows.end());
      b.coefs.push_back(std::move(cf));
    }
    n_total_ += b.n;
    blocks_.push_back(std::move(b));
  }

  // Equalities: normalize rows, drop empty ones, remove dependent rows.
  const auto& eqs = prob_.equalities();
  std::vector<RealVector> rows;
  std::vector<double> rhs;
  std::vector<int> src;
  std::vector<double> scl;
  for (int r = 0; r < static_cast<int>(eqs.size()); ++r) {
    RealVector row = RealVector::Zero(m_);
    for (const auto& t : eqs[r].terms)
      if (t.coef != 0.0) row(compact_[t.var]) += t.coef;
    const double nrm = row.norm();
    if (nrm == 0.0) {
      if (std::abs(eqs[r].rhs) > opt_.feas_tol) {
        finish(out, SdpStatus::PrimalInfeasible);
        return false;
      }
      continue;
    }
    rows.push_back(row / nrm);
    rhs.push_back(eqs[r].rhs / nrm);
    src.push_back(r);
    scl.push_back(nrm);
  }
  const int p_all = static_cast<int>(rows.size());
  if (p_all > 0) {
    RealMatrix et(m_, p_all);
    for (int r = 0; r < p_all; ++r) et.col(r) = rows[r];
    Eigen::ColPivHouseholderQR<RealMatrix> qr(et);
    qr.setThreshold(1e-10);
    const int rank = static_cast<int>(qr.rank());
    std::vector<int> keep;
    for (int i = 0; i < rank; ++i) keep.push_back(qr.colsPermutation().indices()(i));
    std::sort(keep.begin(), keep.end());
    e_mat_.resize(rank, m_);
    e_rhs_.resize(rank);
    eq_scale_.resize(rank);
    for (int i = 0; i < rank; ++i) {
      e_mat_.row(i) = rows[keep[i]].transpose();
      e_rhs_(i) = rhs[keep[i]];
      eq_source_.push_back(src[keep[i]]);
      eq_scale_(i) = scl[keep[i]];
    }
    if (rank < p_all) {
      // Dropped rows must be consistent with the kept ones.
      RealMatrix full(p_all, m_);
      RealVector full_rhs(p_all);
      for (int r = 0; r < p_all; ++r) {
        full.row(r) = rows[r].transpose();
        full_rhs(r) = rhs[r];
      }
      const RealVector ls = e_mat_.completeOrthogonalDecomposition().solve(e_rhs_);
      const RealVector resid = full * ls - full_rhs;
      if (resid.lpNorm<Eigen::Infinity>() > 1e-7 * (1.0 + full_rhs.lpNorm<Eigen::Infinity>())) {
        finish(out, SdpStatus::PrimalInfeasible);
        return false;
      }
    }
  } else {
    e_mat_.resize(0, m_);
    e_rhs_.resize(0);
    eq_scale_.resize(0);
  }
  return true;
}

void InteriorPoint::affine_sum(const RealVector& dy, std::vector<RealMatrix>& out) const {
  out.resize(blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Block& b = blocks_[k];
    out[k] = RealMatrix::Zero(b.n, b.n);
    for (const Coefficient& f : b.coefs) {
      const double v = dy(f.var);
      if (v == 0.0) continue;
      for (const Entry& e : f.entries) out[k](e.row, e.col) += v * e.value;
    }
  }
}

RealVector InteriorPoint::apply_adjoint(const std::vector<RealMatrix>& s) const {
  RealVector a = RealVector::Zero(m_);
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    for (const Coefficient& f : blocks_[k].coefs) a(f.var) += inner(f, s[k]);
  return a;
}

void InteriorPoint::build_schur() {
  schur_ = RealMatrix::Zero(m_, m_);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Block& b = blocks_[k];
    const RealMatrix& x = x_[k];
    const RealMatrix& zi = zinv_[k];
    const int nv = static_cast<int>(b.coefs.size());
    for (int j = 0; j < nv; ++j) {
      const Coefficient& fj = b.coefs[j];
      // G = X F_j Z^{-1}, built from the sparse rows of F_j.
      RealMatrix fz = RealMatrix::Zero(b.n, b.n);
      for (const Entry& e : fj.entries) fz.row(e.row) += e.value * zi.row(e.col);
      RealMatrix g = RealMatrix::Zero(b.n, b.n);
      for (int r : fj.rows) g.noalias() += x.col(r) * fz.row(r);
      for (int i = j; i < nv; ++i) {
        const Coefficient& fi = b.coefs[i];
        double v = 0.0;
        for (const Entry& e : fi.entries) v += e.value * g(e.col, e.row);
        schur_(fi.var, fj.var) += v;
        if (i != j) schur_(fj.var, fi.var) += v;
      }
    }
  }
  const int p = static_cast<int>(e_mat_.rows());
  // Jacobi scaling of the y block; the Schur diagonal spreads over many
  // orders of magnitude as the iterates approach the boundary.
  kkt_scale_.resize(m_);
  for (int i = 0; i < m_; ++i) {
    const double d = schur_(i, i);
    kkt_scale_(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
  }
  RealMatrix kkt = RealMatrix::Zero(m_ + p, m_ + p);
  kkt.topLeftCorner(m_, m_) =
      kkt_scale_.asDiagonal() * sym(schur_) * kkt_scale_.asDiagonal();
  if (p > 0) {
    const RealMatrix es = e_mat_ * kkt_scale_.asDiagonal();
    kkt.topRightCorner(m_, p) = es.transpose();
    kkt.bottomLeftCorner(p, m_) = es;
  }
  for (int i = 0; i < m_; ++i) kkt(i, i) += 1e-14;
  kkt_.compute(kkt);
  if (!(kkt_.rcond() > 1e-18)) {
    for (int i = 0; i < m_; ++i) kkt(i, i) += 1e-10;
    if (p > 0) kkt.bottomRightCorner(p, p).diagonal().array() -= 1e-14;
    kkt_.compute(kkt);
  }

}

void InteriorPoint::direction(const std::vector<RealMatrix>& t,
                              const std::vector<RealMatrix>& rd, const RealVector& rp,
                              const RealVector& re, RealVector& dy, RealVector& dw,
                              std::vector<RealMatrix>& dz, std::vector<RealMatrix>& dx) {
  const std::size_t nb = blocks_.size();
  std::vector<RealMatrix> h(nb);
  for (std::size_t k = 0; k < nb; ++k) h[k] = sym(t[k] - x_[k] * rd[k] * zinv_[k]);
  const int p = static_cast<int>(e_mat_.rows());
  RealVector rhs(m_ + p);
  rhs.head(m_) = kkt_scale_.cwiseProduct(apply_adjoint(h) - rp);
  rhs.tail(p) = re;
  RealVector sol = kkt_.solve(rhs);
  // Refine against the operator itself rather than the assembled Schur
  // matrix, whose rounding errors otherwise leak into the dual residual.
  std::vector<RealMatrix> ady(nb), prod(nb);
  for (int it = 0; it < 3; ++it) {
    const RealVector y_part = kkt_scale_.cwiseProduct(sol.head(m_));
    affine_sum(y_part, ady);
    for (std::size_t k = 0; k < nb; ++k) prod[k] = sym(x_[k] * ady[k] * zinv_[k]);
    RealVector r(m_ + p);
    r.head(m_) = rhs.head(m_) - kkt_scale_.cwiseProduct(apply_adjoint(prod));
    if (p > 0) {
      r.head(m_) -= kkt_scale_.cwiseProduct(e_mat_.transpose() * sol.tail(p));
      r.tail(p) = rhs.tail(p) - e_mat_ * y_part;
    }
    sol += kkt_.solve(r);
  }
  dy = kkt_scale_.cwiseProduct(sol.head(m_));
  dw = -sol.tail(p);
  affine_sum(dy, dz);
  dx.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    dz[k] += rd[k];
    dx[k] = sym(t[k] - x_[k] * dz[k] * zinv_[k]);
  }
}

void InteriorPoint::finish(SdpSolution& out, SdpStatus status) {
  out.status = status;
  const int n_orig = prob_.num_vars();
  out.primal_point = RealVector::Zero(n_orig);
  const bool have_best = best_y_.size() == m_ && m_ > 0;
  const RealVector& y = status == SdpStatus::Optimal || !have_best ? y_ : best_y_;
  const RealVector& w = status == SdpStatus::Optimal || !have_best ? w_ : best_w_;
  const std::vector<RealMatrix>& x = status == SdpStatus::Optimal || !have_best ? x_ : best_x_;
  if (y.size() == m_)
    for (int j = 0; j < m_; ++j) out.primal_point(var_of_[j]) = y(j);

  out.dual_point = RealVector::Zero(static_cast<Eigen::Index>(prob_.equalities().size()));
  if (w.size() == static_cast<Eigen::Index>(eq_source_.size()))
    for (std::size_t i = 0; i < eq_source_.size(); ++i)
      out.dual_point(eq_source_[i]) = w(i) / eq_scale_(i);

  const auto& lmis = prob_.lmis();
  out.lmi_duals.assign(lmis.size(), RealMatrix());
  out.lmi_values.assign(lmis.size(), RealMatrix());
  for (std::size_t k = 0; k < lmis.size(); ++k) {
    out.lmi_duals[k] = RealMatrix::Zero(lmis[k].dim, lmis[k].dim);
    RealMatrix v = lmis[k].constant;
    for (const auto& vc : lmis[k].coefficients)
      for (const auto& e : vc.entries) {
        v(e.row, e.col) += e.value * out.primal_point(vc.var);
        if (e.row != e.col) v(e.col, e.row) += e.value * out.primal_point(vc.var);
      }
    out.lmi_values[k] = v;
  }
  if (x.size() == blocks_.size())
    for (std::size_t k = 0; k < blocks_.size(); ++k) out.lmi_duals[blocks_[k].source] = x[k];

  out.primal_objective = prob_.objective().evaluate(out.primal_point);
  out.optimum = out.primal_objective;
  if (status != SdpStatus::Optimal && have_best) {
    out.gap = best_gap_;
    out.primal_residual = best_pinf_;
    out.dual_residual = best_dinf_;
  }
}

SdpSolution InteriorPoint::run() {
  SdpSolution out;
  if (!presolve(out)) return out;
  const int p = static_cast<int>(e_mat_.rows());
  const double c0 = prob_.objective().constant();
  y_ = RealVector::Zero(m_);
  w_ = RealVector::Zero(p);

  if (m_ == 0) {
    finish(out, SdpStatus::Optimal);
    out.dual_objective = c0;
    return out;
  }
  if (blocks_.empty()) {
    // Pure linear equality system: bounded only if c lies in the row space.
    y_ = e_mat_.completeOrthogonalDecomposition().solve(e_rhs_);
    if (p > 0) w_ = e_mat_.transpose().completeOrthogonalDecomposition().solve(c_);
    const double resid = p > 0 ? (e_mat_.transpose() * w_ - c_).norm() : c_.norm();
    if (resid > opt_.feas_tol * (1.0 + c_.norm())) {
      finish(out, SdpStatus::DualInfeasible);
      return out;
    }
    if ((e_mat_ * y_ - e_rhs_).norm() > opt_.feas_tol * (1.0 + e_rhs_.norm())) {
      finish(out, SdpStatus::PrimalInfeasible);
      return out;
    }
    finish(out, SdpStatus::Optimal);
    out.dual_objective = sign_ * e_rhs_.dot(w_) + c0;
    return out;
  }

  // Starting point scaled to the data.
  double max_fi = 0.0, max_ratio = 0.0, f0_norm = 0.0;
  std::vector<double> fi_norm(m_, 0.0);
  for (const Block& b : blocks_) {
    f0_norm = std::max(f0_norm, b.f0.norm());
    for (const Coefficient& f : b.coefs) {
      double s = 0.0;
      for (const Entry& e : f.entries) s += e.value * e.value;
      fi_norm[f.var] += s;
    }
  }
  for (int j = 0; j < m_; ++j) {
    fi_norm[j] = std::sqrt(fi_norm[j]);
    max_fi = std::max(max_fi, fi_norm[j]);
    max_ratio = std::max(max_ratio, (1.0 + std::abs(c_(j))) / (1.0 + fi_norm[j]));
  }
  const double sqrt_n = std::sqrt(static_cast<double>(n_total_));
  const double xi = std::max({10.0, sqrt_n, n_total_ * max_ratio});
  const double eta = std::max({10.0, sqrt_n, max_fi, f0_norm});

  const std::size_t nb = blocks_.size();
  x_.resize(nb);
  z_.resize(nb);
  zinv_.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    x_[k] = xi * RealMatrix::Identity(blocks_[k].n, blocks_[k].n);
    z_[k] = eta * RealMatrix::Identity(blocks_[k].n, blocks_[k].n);
  }
  const double c_norm = c_.norm();
  const double e_norm = e_rhs_.norm();

  std::vector<RealMatrix> fy, rd(nb), t(nb), dza, dxa, dz, dx;
  RealVector dya, dwa, dy, dw;
  int stall_count = 0;
  int tiny_steps = 0;
  SdpStatus status = SdpStatus::MaxIterations;

  for (int iter = 0; iter <= opt_.max_iterations; ++iter) {
    out.iterations = iter;
    affine_sum(y_, fy);
    double rd_norm = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      fy[k] += blocks_[k].f0;
      rd[k] = fy[k] - z_[k];
      rd_norm += rd[k].squaredNorm();
    }
    rd_norm = std::sqrt(rd_norm);
    const RealVector ax = apply_adjoint(x_);
    const RealVector rp = c_ - ax - e_mat_.transpose() * w_;
    const RealVector re = e_rhs_ - e_mat_ * y_;
    const double pobj = c_.dot(y_);
    double f0x = 0.0, xz = 0.0, x_norm = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      f0x += inner(blocks_[k].f0, x_[k]);
      xz += inner(x_[k], z_[k]);
      x_norm += x_[k].squaredNorm();
    }
    x_norm = std::sqrt(x_norm);
    const double dobj = -f0x + e_rhs_.dot(w_);
    const double mu = xz / n_total_;
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double pinf =
        std::max(rd_norm / (1.0 + f0_norm), re.norm() / (1.0 + e_norm));
    const double dinf = rp.norm() / (1.0 + c_norm);

    out.gap = gap;
    out.primal_residual = pinf;
    out.dual_residual = dinf;
    out.primal_objective = sign_ * pobj + c0;
    out.dual_objective = sign_ * dobj + c0;

    const double merit = std::max({gap, pinf, dinf});
    if (merit < best_merit_) {
      best_merit_ = merit;
      best_y_ = y_;
      best_w_ = w_;
      best_x_ = x_;
      best_gap_ = gap;
      best_pinf_ = pinf;
      best_dinf_ = dinf;
    }
    if (opt_.verbose)
      std::fprintf(stderr, "%3d pobj %+.9e dobj %+.9e gap %.2e pinf %.2e dinf %.2e mu %.2e\n",
                   iter, sign_ * pobj + c0, sign_ * dobj + c0, gap, pinf, dinf, mu);

    if (gap <= opt_.gap_tol && pinf <= opt_.feas_tol && dinf <= opt_.feas_tol) {
      status = SdpStatus::Optimal;
      break;
    }
    // Farkas ray for the constraints: X >= 0, A(X) + E^T w ~ 0, <-F0,X> + e^T w > 0.
    const double dhom = dobj;
    if (dhom > 0.0 && x_norm > 1e4 && (c_ - rp).norm() <= 1e-8 * dhom) {
      status = SdpStatus::PrimalInfeasible;
      break;
    }
    // Recession direction y with sum y_i F_i >= 0, E y = 0, c^T y < 0.
    const double phom = -pobj;
    if (phom > 1e6 * (1.0 + c_norm)) {
      double worst = 0.0;
      for (std::size_t k = 0; k < nb; ++k)
        worst = std::min(worst, min_eig(fy[k] - blocks_[k].f0));
      const double eq_dev = (e_mat_ * y_).norm();
      if (worst >= -1e-8 * phom && eq_dev <= 1e-8 * phom) {
        status = SdpStatus::DualInfeasible;
        break;
      }
    }
    if (mu < opt_.stall_mu && std::max(pinf, dinf) > opt_.stall_residual) {
      if (++stall_count >= opt_.stall_window) {
        status = pinf >= dinf ? SdpStatus::PrimalInfeasible : SdpStatus::DualInfeasible;
        break;
      }
    } else {
      stall_count = 0;
    }
    if (iter == opt_.max_iterations) break;

    std::vector<Eigen::LLT<RealMatrix>> chol_x(nb), chol_z(nb);
    bool ok = true;
    for (std::size_t k = 0; k < nb; ++k) {
      chol_x[k].compute(x_[k]);
      chol_z[k].compute(z_[k]);
      if (chol_x[k].info() != Eigen::Success || chol_z[k].info() != Eigen::Success) {
        ok = false;
        break;
      }
      zinv_[k] = chol_z[k].solve(RealMatrix::Identity(blocks_[k].n, blocks_[k].n));
      zinv_[k] = sym(zinv_[k]);
    }
    if (!ok) {
      status = SdpStatus::Stalled;
      break;
    }
    build_schur();

    // Predictor.
    for (std::size_t k = 0; k < nb; ++k) t[k] = -x_[k];
    direction(t, rd, rp, re, dya, dwa, dza, dxa);
    double ap = std::numeric_limits<double>::infinity(), ad = ap;
    for (std::size_t k = 0; k < nb; ++k) {
      ap = std::min(ap, max_step(chol_x[k], dxa[k]));
      ad = std::min(ad, max_step(chol_z[k], dza[k]));
    }
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double xz_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k)
      xz_aff += inner(x_[k] + ap * dxa[k], z_[k] + ad * dza[k]);
    const double mu_aff = xz_aff / n_total_;
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3);
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector.
    for (std::size_t k = 0; k < nb; ++k)
      t[k] = sigma * mu * zinv_[k] - x_[k] - dxa[k] * dza[k] * zinv_[k];
    direction(t, rd, rp, re, dy, dw, dz, dx);
    ap = std::numeric_limits<double>::infinity();
    ad = ap;
    for (std::size_t k = 0; k < nb; ++k) {
      ap = std::min(ap, max_step(chol_x[k], dx[k]));
      ad = std::min(ad, max_step(chol_z[k], dz[k]));
    }
    ap = std::min(1.0, opt_.step_fraction * ap);
    ad = std::min(1.0, opt_.step_fraction * ad);

    for (std::size_t k = 0; k < nb; ++k) {
      x_[k] += ap * dx[k];
      z_[k] += ad * dz[k];
    }
    w_ += ap * dw;
    y_ += ad * dy;

    if (ap < 1e-10 && ad < 1e-10) {
      if (++tiny_steps >= 5) {
        status = SdpStatus::Stalled;
        break;
      }
    } else {
      tiny_steps = 0;
    }
  }

  finish(out, status);
  return out;
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options) {
  InteriorPoint ip(problem, options);
  return ip.run();
}

}  // namespace ammkit
