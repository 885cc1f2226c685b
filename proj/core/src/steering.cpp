#include "ammkit/steering.hpp"

#include <algorithm>

namespace ammkit {

namespace {

struct HiddenModel {
  std::vector<Strategy> strategies;
  std::vector<HermitianExpr> states;

  // sum_l D(a|x,l) states[l].
  HermitianExpr response(int x, int a, int d) const {
    HermitianExpr s = HermitianExpr::constant(ComplexMatrix::Zero(d, d));
    for (std::size_t l = 0; l < strategies.size(); ++l)
      if (strategies[l][x] == a) s += states[l];
    return s;
  }

  LinExpr total_trace() const {
    LinExpr t;
    for (const HermitianExpr& s : states) t += s.trace();
    return t;
  }

  std::vector<ComplexMatrix> values(const SdpSolution& sol) const {
    std::vector<ComplexMatrix> out;
    for (const HermitianExpr& s : states) out.push_back(sol.value(s));
    return out;
  }
};

HiddenModel add_hidden_states(SdpProblem& p, const Assemblage& a) {
  HiddenModel m;
  m.strategies = deterministic_strategies(a.num_settings(), a.num_outcomes());
  for (std::size_t l = 0; l < m.strategies.size(); ++l)
    m.states.push_back(p.add_hermitian_psd(a.dim()));
  return m;
}

// Robustness SDP with optional consistency constraint; returns the
// solution along with the LMI indices of the (a,x) constraints.
SdpSolution solve_robustness(const Assemblage& a, bool consistent, HiddenModel& model,
                             std::vector<std::vector<int>>& lmi_index) {
  a.validate();
  const int d = a.dim();
  SdpProblem p;
  model = add_hidden_states(p, a);
  lmi_index.assign(a.num_settings(), std::vector<int>(a.num_outcomes(), -1));
  for (int x = 0; x < a.num_settings(); ++x)
    for (int y = 0; y < a.num_outcomes(); ++y)
      lmi_index[x][y] = p.add_hermitian_lmi(model.response(x, y, d) -
                                            HermitianExpr::constant(a.states[x][y]));
  const LinExpr trace = model.total_trace();
  if (consistent) {
    HermitianExpr sum = HermitianExpr::constant(ComplexMatrix::Zero(d, d));
    for (const HermitianExpr& s : model.states) sum += s;
    p.add_hermitian_equality(sum - scale(trace, a.reduced_state(0)));
  }
  p.set_objective(trace - 1.0, Sense::Minimize);
  return solve(p);
}

}  // namespace

LhsModel has_lhs_model(const Assemblage& a, double tol) {
  a.validate();
  const int d = a.dim();
  SdpProblem p;
  const HiddenModel model = add_hidden_states(p, a);
  const int s = p.add_var();
  const LinExpr slack = LinExpr::variable(s);
  for (int x = 0; x < a.num_settings(); ++x)
    for (int k = 0; k < a.num_outcomes(); ++k) {
      const HermitianExpr diff = HermitianExpr::constant(a.states[x][k]) - model.response(x, k, d);
      HermitianExpr upper = -1.0 * diff;
      upper.re().add_identity(slack);
      HermitianExpr lower = diff;
      lower.re().add_identity(slack);
      p.add_hermitian_lmi(upper);
      p.add_hermitian_lmi(lower);
    }
  p.set_objective(slack, Sense::Minimize);
  const SdpSolution sol = solve(p);
  require_acceptable(sol, "has_lhs_model");
  LhsModel out;
  out.residual = sol.optimum;
  out.feasible = sol.optimum <= tol;
  out.diagnostics = diagnostics(sol);
  if (out.feasible) out.hidden_states = model.values(sol);
  return out;
}

SteeringResult steering_robustness(const Assemblage& a) {
  HiddenModel model;
  std::vector<std::vector<int>> idx;
  const SdpSolution sol = solve_robustness(a, false, model, idx);
  require_acceptable(sol, "steering_robustness");
  return {sol.optimum, model.values(sol), diagnostics(sol)};
}

SteeringResult consistent_steering_robustness(const Assemblage& a) {
  HiddenModel model;
  std::vector<std::vector<int>> idx;
  const SdpSolution sol = solve_robustness(a, true, model, idx);
  require_acceptable(sol, "consistent_steering_robustness");
  return {sol.optimum, model.values(sol), diagnostics(sol)};
}

SteeringResult steerable_weight(const Assemblage& a) {
  a.validate();
  const int d = a.dim();
  SdpProblem p;
  const HiddenModel model = add_hidden_states(p, a);
  for (int x = 0; x < a.num_settings(); ++x)
    for (int k = 0; k < a.num_outcomes(); ++k)
      p.add_hermitian_lmi(HermitianExpr::constant(a.states[x][k]) - model.response(x, k, d));
  p.set_objective(1.0 - model.total_trace(), Sense::Minimize);
  const SdpSolution sol = solve(p);
  require_acceptable(sol, "steerable_weight");
  return {sol.optimum, model.values(sol), diagnostics(sol)};
}

double SteeringInequality::evaluate(const Assemblage& a) const {
  double v = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x)
    for (std::size_t k = 0; k < f[x].size(); ++k)
      v += (f[x][k] * a.states[x][k]).trace().real();
  return v;
}

SteeringInequality steering_inequality(const Assemblage& a) {
  HiddenModel model;
  std::vector<std::vector<int>> idx;
  const SdpSolution sol = solve_robustness(a, false, model, idx);
  require_acceptable(sol, "steering_inequality");
  SteeringInequality w;
  w.f.resize(a.num_settings());
  for (int x = 0; x < a.num_settings(); ++x)
    for (int k = 0; k < a.num_outcomes(); ++k) {
      ComplexMatrix f = hermitian_from_embedded_dual(sol.lmi_duals[idx[x][k]]);
      f = 0.5 * (f + f.adjoint());
      // Drop numerical negativity so the bound below stays rigorous.
      const HermitianEigen e = eig_hermitian(f);
      ComplexMatrix fp = ComplexMatrix::Zero(f.rows(), f.cols());
      for (Eigen::Index i = 0; i < e.values.size(); ++i)
        if (e.values(i) > 0.0) fp += e.values(i) * projector(e.vectors.col(i));
      w.f[x].push_back(fp);
    }
  double bound = 0.0;
  for (const Strategy& s : model.strategies) {
    ComplexMatrix sum = ComplexMatrix::Zero(a.dim(), a.dim());
    for (int x = 0; x < a.num_settings(); ++x) sum += w.f[x][s[x]];
    bound = std::max(bound, max_eigenvalue(sum));
  }
  w.local_bound = bound;
  w.value = w.evaluate(a);
  return w;
}

MeasurementAssemblage steering_equivalent_observables(const Assemblage& a) {
  const ComplexMatrix s = inv_sqrt_psd(a.reduced_state(0), true);
  MeasurementAssemblage m;
  for (const auto& row : a.states) {
    std::vector<ComplexMatrix> povm;
    for (const ComplexMatrix& r : row) {
      const ComplexMatrix b = s * r * s;
      povm.push_back(0.5 * (b + b.adjoint()));
    }
    m.povms.push_back(std::move(povm));
  }
  return m;
}

MeasurementAssemblage steering_equivalent_observables_on_range(const Assemblage& a) {
  const ComplexMatrix v = range_basis(a.reduced_state(0));
  MeasurementAssemblage ambient = steering_equivalent_observables(a);
  for (auto& row : ambient.povms)
    for (ComplexMatrix& b : row) {
      const ComplexMatrix r = v.adjoint() * b * v;
      b = 0.5 * (r + r.adjoint());
    }
  return ambient;
}

}  // namespace ammkit
