#include "ammkit/incompat.hpp"

namespace ammkit {

namespace {

struct Parent {
  std::vector<Strategy> strategies;
  std::vector<HermitianExpr> elements;

  HermitianExpr response(int x, int a, int d) const {
    HermitianExpr s = HermitianExpr::constant(ComplexMatrix::Zero(d, d));
    for (std::size_t l = 0; l < strategies.size(); ++l)
      if (strategies[l][x] == a) s += elements[l];
    return s;
  }

  HermitianExpr sum(int d) const {
    HermitianExpr s = HermitianExpr::constant(ComplexMatrix::Zero(d, d));
    for (const HermitianExpr& g : elements) s += g;
    return s;
  }

  std::vector<ComplexMatrix> values(const SdpSolution& sol) const {
    std::vector<ComplexMatrix> out;
    for (const HermitianExpr& g : elements) out.push_back(sol.value(g));
    return out;
  }
};

Parent add_parent(SdpProblem& p, const MeasurementAssemblage& m) {
  Parent g;
  g.strategies = deterministic_strategies(m.num_settings(), m.num_outcomes());
  for (std::size_t l = 0; l < g.strategies.size(); ++l)
    g.elements.push_back(p.add_hermitian_psd(m.dim()));
  return g;
}

// sum_l G_l == (1/d) tr(sum_l G_l) I; returns the normalized trace.
LinExpr add_proportional_to_identity(SdpProblem& p, const Parent& g, int d) {
  const HermitianExpr s = g.sum(d);
  const LinExpr t = (1.0 / d) * s.trace();
  p.add_hermitian_equality(s - scale(t, identity(d)));
  return t;
}

}  // namespace

JointMeasurability is_jointly_measurable(const MeasurementAssemblage& m, double tol) {
  m.validate();
  const int d = m.dim();
  SdpProblem p;
  const Parent g = add_parent(p, m);
  p.add_hermitian_equality(g.sum(d) - HermitianExpr::constant(identity(d)));
  const LinExpr slack = LinExpr::variable(p.add_var());
  for (int x = 0; x < m.num_settings(); ++x)
    for (int a = 0; a < m.num_outcomes(); ++a) {
      const HermitianExpr diff = HermitianExpr::constant(m.povms[x][a]) - g.response(x, a, d);
      HermitianExpr upper = -1.0 * diff;
      upper.re().add_identity(slack);
      HermitianExpr lower = diff;
      lower.re().add_identity(slack);
      p.add_hermitian_lmi(upper);
      p.add_hermitian_lmi(lower);
    }
  p.set_objective(slack, Sense::Minimize);
  const SdpSolution sol = solve(p);
  require_acceptable(sol, "is_jointly_measurable");
  JointMeasurability out;
  out.residual = sol.optimum;
  out.jointly_measurable = sol.optimum <= tol;
  out.diagnostics = diagnostics(sol);
  if (out.jointly_measurable) out.parent = g.values(sol);
  return out;
}

IncompatResult incompatibility_robustness(const MeasurementAssemblage& m) {
  m.validate();
  const int d = m.dim();
  SdpProblem p;
  const Parent g = add_parent(p, m);
  for (int x = 0; x < m.num_settings(); ++x)
    for (int a = 0; a < m.num_outcomes(); ++a)
      p.add_hermitian_lmi(g.response(x, a, d) - HermitianExpr::constant(m.povms[x][a]));
  const LinExpr t = add_proportional_to_identity(p, g, d);
  p.set_objective(t - 1.0, Sense::Minimize);
  const SdpSolution sol = solve(p);
  require_acceptable(sol, "incompatibility_robustness");
  return {sol.optimum, g.values(sol), diagnostics(sol)};
}

IncompatResult incompatibility_weight(const MeasurementAssemblage& m) {
  m.validate();
  const int d = m.dim();
  SdpProblem p;
  const Parent g = add_parent(p, m);
  for (int x = 0; x < m.num_settings(); ++x)
    for (int a = 0; a < m.num_outcomes(); ++a)
      p.add_hermitian_lmi(HermitianExpr::constant(m.povms[x][a]) - g.response(x, a, d));
  const LinExpr t = add_proportional_to_identity(p, g, d);
  p.set_objective(1.0 - t, Sense::Minimize);
  const SdpSolution sol = solve(p);
  require_acceptable(sol, "incompatibility_weight");
  return {sol.optimum, g.values(sol), diagnostics(sol)};
}

}  // namespace ammkit
