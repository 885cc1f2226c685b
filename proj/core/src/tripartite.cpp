#include <cmath>
#include <limits>

#include "ammkit/amm.hpp"

namespace ammkit {

Correlation tripartite_correlation(const TripartiteAssemblage& t,
                                   const MeasurementAssemblage& charlie) {
  t.validate();
  charlie.validate();
  if (charlie.dim() != t.dim())
    throw DimensionError("tripartite_correlation: Charlie's measurements act on dimension " +
                         std::to_string(charlie.dim()) + ", states have " +
                         std::to_string(t.dim()));
  const int nz = charlie.num_settings(), nc = charlie.num_outcomes();
  Correlation p(Scenario::tripartite(t.nx, t.ny, nz, t.na, t.nb, nc));
  for (int x = 0; x < t.nx; ++x)
    for (int y = 0; y < t.ny; ++y)
      for (int z = 0; z < nz; ++z)
        for (int a = 0; a < t.na; ++a)
          for (int b = 0; b < t.nb; ++b)
            for (int c = 0; c < nc; ++c)
              p(a, b, c, x, y, z) = (t.at(x, y, a, b) * charlie.povms[z][c]).trace().real();
  return p;
}

TripartiteFeasibility tripartite_amm_feasible(const Correlation& p, int level, double tol) {
  const Scenario& s = p.scenario();
  if (s.parties() != 3) throw ValidationError("tripartite_amm_feasible: expected three parties");
  if (level < 1) throw ValidationError("level must be >= 1");
  const AmmTemplate t = build_template(s, level, 2);
  const int nx = s.settings[0], ny = s.settings[1];
  const int na = s.outcomes[0], nb = s.outcomes[1];
  const int unknown0 = 1 + t.n_settings * (t.n_outcomes - 1);

  SdpProblem prob;
  auto index = [&](int x, int y, int a, int b) { return ((x * ny + y) * na + a) * nb + b; };
  std::vector<std::vector<LinExpr>> slots(static_cast<std::size_t>(nx * ny * na * nb));
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
          std::vector<LinExpr> v(t.num_slots());
          double pab = 0.0;
          for (int c = 0; c < t.n_outcomes; ++c) pab += p(a, b, c, x, y, 0);
          v[0] = pab;
          for (int z = 0; z < t.n_settings; ++z)
            for (int c = 0; c + 1 < t.n_outcomes; ++c)
              v[t.probability_slot(z, c)] = p(a, b, c, x, y, z);
          for (int k = unknown0; k < t.num_slots(); ++k) v[k] = LinExpr::variable(prob.add_var());
          slots[index(x, y, a, b)] = std::move(v);
        }

  // Marginal consistency: sum_a independent of x, sum_b independent of y.
  // Fixed entries that differ signal to Charlie; no AMM can match them.
  bool signalling = false;
  auto add_equal = [&](LinExpr d) {
    d.compress();
    if (!d.is_constant()) prob.add_equality(d);
    else if (std::abs(d.constant()) > tol) signalling = true;
  };
  for (int k = 0; k < t.num_slots(); ++k) {
    for (int y = 0; y < ny; ++y)
      for (int b = 0; b < nb; ++b)
        for (int x = 1; x < nx; ++x) {
          LinExpr d;
          for (int a = 0; a < na; ++a)
            d += slots[index(x, y, a, b)][k] - slots[index(0, y, a, b)][k];
          add_equal(d);
        }
    for (int x = 0; x < nx; ++x)
      for (int a = 0; a < na; ++a)
        for (int y = 1; y < ny; ++y) {
          LinExpr d;
          for (int b = 0; b < nb; ++b)
            d += slots[index(x, y, a, b)][k] - slots[index(x, 0, a, b)][k];
          add_equal(d);
        }
  }

  TripartiteFeasibility out;
  out.level = level;
  if (signalling) {
    out.margin = -std::numeric_limits<double>::infinity();
    return out;
  }

  const LinExpr margin = LinExpr::variable(prob.add_var());
  std::vector<AffineMatrix> chi;
  for (const auto& v : slots) {
    chi.push_back(template_matrix(t, v));
    AffineMatrix shifted = chi.back();
    shifted.add_identity(-margin);
    prob.add_lmi(shifted);
  }
  prob.set_objective(margin, Sense::Maximize);
  const SdpSolution sol = solve(prob);
  require_acceptable(sol, "tripartite_amm_feasible");

  out.margin = sol.optimum;
  out.feasible = sol.optimum >= -tol;
  out.diagnostics = diagnostics(sol);
  for (const AffineMatrix& m : chi) out.certificate.push_back(sol.value(m));
  return out;
}

TripartiteFeasibility tripartite_amm_feasible(const TripartiteAssemblage& t,
                                              const MeasurementAssemblage& charlie, int level,
                                              double tol) {
  if (!charlie.is_projective())
    throw ValidationError("tripartite_amm_feasible: Charlie's measurements must be projective");
  return tripartite_amm_feasible(tripartite_correlation(t, charlie), level, tol);
}

}  // namespace ammkit
