#include "ammkit/npa.hpp"

#include <map>

namespace ammkit {

int BipartiteTemplate::num_slots() const { return unknown_slot(0) + num_unknowns(); }

int BipartiteTemplate::alice_slot(int x, int a) const {
  return 1 + x * (scenario.outcomes[0] - 1) + a;
}

int BipartiteTemplate::bob_slot(int y, int b) const {
  return 1 + scenario.settings[0] * (scenario.outcomes[0] - 1) + y * (scenario.outcomes[1] - 1) + b;
}

int BipartiteTemplate::joint_slot(int x, int y, int a, int b) const {
  const int ka = scenario.settings[0] * (scenario.outcomes[0] - 1);
  const int kb = scenario.settings[1] * (scenario.outcomes[1] - 1);
  const int ia = x * (scenario.outcomes[0] - 1) + a;
  const int ib = y * (scenario.outcomes[1] - 1) + b;
  return 1 + ka + kb + ia * kb + ib;
}

int BipartiteTemplate::unknown_slot(int id) const {
  const int ka = scenario.settings[0] * (scenario.outcomes[0] - 1);
  const int kb = scenario.settings[1] * (scenario.outcomes[1] - 1);
  return 1 + ka + kb + ka * kb + id;
}

int BipartiteTemplate::slot(const NpaEntry& e) const {
  switch (e.kind) {
    case NpaEntryKind::Normalization: return 0;
    case NpaEntryKind::AliceMarginal: return alice_slot(e.x, e.a);
    case NpaEntryKind::BobMarginal: return bob_slot(e.y, e.b);
    case NpaEntryKind::Joint: return joint_slot(e.x, e.y, e.a, e.b);
    case NpaEntryKind::Unknown: return unknown_slot(e.unknown);
    case NpaEntryKind::Zero: break;
  }
  return -1;
}

BipartiteTemplate build_bipartite_template(const Scenario& s, int level) {
  s.validate();
  if (s.parties() != 2) throw ValidationError("build_bipartite_template: expected two parties");
  BipartiteTemplate t;
  t.scenario = s;
  t.level = level;
  t.a_words = enumerate_words(s.settings[0], s.outcomes[0], level);
  t.b_words = enumerate_words(s.settings[1], s.outcomes[1], level);
  if (t.a_words.size() * t.b_words.size() > kMaxWords * kMaxWords / 4)
    throw ValidationError("build_bipartite_template: moment matrix too large");
  const int nb = static_cast<int>(t.b_words.size());
  const int n = t.size();
  t.entries.resize(static_cast<std::size_t>(n) * n);
  std::map<std::pair<OperatorWord, OperatorWord>, int> ids;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const auto wa = multiply(t.a_words[r / nb].reversed(), t.a_words[c / nb]);
      const auto wb = multiply(t.b_words[r % nb].reversed(), t.b_words[c % nb]);
      NpaEntry& e = t.entries[r * n + c];
      if (!wa || !wb) continue;
      const bool a_short = wa->length() <= 1, b_short = wb->length() <= 1;
      if (a_short && b_short) {
        if (wa->is_projector()) e.x = wa->letters()[0].setting, e.a = wa->letters()[0].outcome;
        if (wb->is_projector()) e.y = wb->letters()[0].setting, e.b = wb->letters()[0].outcome;
        e.kind = wa->is_identity()
                     ? (wb->is_identity() ? NpaEntryKind::Normalization : NpaEntryKind::BobMarginal)
                     : (wb->is_identity() ? NpaEntryKind::AliceMarginal : NpaEntryKind::Joint);
        continue;
      }
      auto key = std::min(std::make_pair(*wa, *wb), std::make_pair(wa->reversed(), wb->reversed()));
      auto [it, inserted] = ids.try_emplace(key, t.num_unknowns());
      if (inserted) t.unknowns.push_back(key);
      e.kind = NpaEntryKind::Unknown;
      e.unknown = it->second;
    }
  return t;
}

AffineMatrix template_matrix(const BipartiteTemplate& t, const std::vector<LinExpr>& slots) {
  AffineMatrix m(t.size());
  for (int r = 0; r < t.size(); ++r)
    for (int c = 0; c < t.size(); ++c) {
      const int s = t.slot(t.entry(r, c));
      if (s >= 0) m(r, c) = slots[s];
    }
  return m;
}

AffineMatrix partial_transpose_alice(const BipartiteTemplate& t, const AffineMatrix& m) {
  const int nb = static_cast<int>(t.b_words.size());
  AffineMatrix out(t.size());
  for (int r = 0; r < t.size(); ++r)
    for (int c = 0; c < t.size(); ++c) {
      const int i = r / nb, j = r % nb, k = c / nb, l = c % nb;
      out(r, c) = m(k * nb + j, i * nb + l);
    }
  return out;
}

LinExpr slot_probability(const BipartiteTemplate& t, const std::vector<LinExpr>& s, int x,
                         int y, int a, int b) {
  const int na = t.scenario.outcomes[0], nb = t.scenario.outcomes[1];
  const bool a_last = a == na - 1, b_last = b == nb - 1;
  if (!a_last && !b_last) return s[t.joint_slot(x, y, a, b)];
  if (!a_last) {
    LinExpr v = s[t.alice_slot(x, a)];
    for (int k = 0; k + 1 < nb; ++k) v -= s[t.joint_slot(x, y, a, k)];
    return v;
  }
  if (!b_last) {
    LinExpr v = s[t.bob_slot(y, b)];
    for (int k = 0; k + 1 < na; ++k) v -= s[t.joint_slot(x, y, k, b)];
    return v;
  }
  LinExpr v = s[0];
  for (int k = 0; k + 1 < na; ++k) v -= s[t.alice_slot(x, k)];
  for (int k = 0; k + 1 < nb; ++k) v -= s[t.bob_slot(y, k)];
  for (int i = 0; i + 1 < na; ++i)
    for (int k = 0; k + 1 < nb; ++k) v += s[t.joint_slot(x, y, i, k)];
  return v;
}

ComplexMatrix instantiate_numeric(const BipartiteTemplate& t, const ComplexMatrix& rho,
                                  const MeasurementAssemblage& alice,
                                  const MeasurementAssemblage& bob) {
  if (!alice.is_projective() || !bob.is_projective())
    throw ValidationError("instantiate_numeric: measurements must be projective");
  std::vector<ComplexMatrix> ops;
  for (const OperatorWord& wa : t.a_words)
    for (const OperatorWord& wb : t.b_words)
      ops.push_back(kron(word_operator(wa, alice), word_operator(wb, bob)));
  ComplexMatrix chi(t.size(), t.size());
  for (int r = 0; r < t.size(); ++r)
    for (int c = 0; c < t.size(); ++c) chi(r, c) = (rho * ops[r].adjoint() * ops[c]).trace();
  return chi;
}

namespace {

void check_input(const Correlation& p, int level) {
  if (p.scenario().parties() != 2) throw ValidationError("expected a bipartite correlation");
  p.validate(1e-7);
  if (level < 1) throw ValidationError("level must be >= 1");
}

// Known slots from P, unknowns as fresh variables.
std::vector<LinExpr> observed_slots(const BipartiteTemplate& t, const Correlation& p,
                                    SdpProblem& prob) {
  const Scenario& s = t.scenario;
  std::vector<LinExpr> v(t.num_slots());
  v[0] = 1.0;
  for (int x = 0; x < s.settings[0]; ++x)
    for (int a = 0; a + 1 < s.outcomes[0]; ++a) v[t.alice_slot(x, a)] = p.alice_marginal(a, x);
  for (int y = 0; y < s.settings[1]; ++y)
    for (int b = 0; b + 1 < s.outcomes[1]; ++b) v[t.bob_slot(y, b)] = p.bob_marginal(b, y);
  for (int x = 0; x < s.settings[0]; ++x)
    for (int y = 0; y < s.settings[1]; ++y)
      for (int a = 0; a + 1 < s.outcomes[0]; ++a)
        for (int b = 0; b + 1 < s.outcomes[1]; ++b) v[t.joint_slot(x, y, a, b)] = p(a, b, x, y);
  for (int k = t.unknown_slot(0); k < t.num_slots(); ++k) v[k] = LinExpr::variable(prob.add_var());
  return v;
}

std::vector<LinExpr> free_slots(const BipartiteTemplate& t, SdpProblem& prob, int from) {
  std::vector<LinExpr> v(t.num_slots());
  for (int k = from; k < t.num_slots(); ++k) v[k] = LinExpr::variable(prob.add_var());
  return v;
}

// Joint deterministic strategies with one weight each.
struct LocalModel {
  std::vector<Strategy> sa, sb;
  std::vector<int> q;  // variable per (ia, ib), ia-major

  LinExpr weights(auto&& keep_a, auto&& keep_b) const {
    LinExpr s;
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (!keep_a(sa[i])) continue;
      for (std::size_t j = 0; j < sb.size(); ++j)
        if (keep_b(sb[j])) s.add_term(q[i * sb.size() + j], 1.0);
    }
    return s;
  }
  LinExpr total() const {
    LinExpr s;
    for (int v : q) s.add_term(v, 1.0);
    return s;
  }
};

LocalModel add_local_model(const Scenario& s, SdpProblem& prob) {
  LocalModel m;
  m.sa = deterministic_strategies(s.settings[0], s.outcomes[0]);
  m.sb = deterministic_strategies(s.settings[1], s.outcomes[1]);
  if (static_cast<double>(m.sa.size()) * static_cast<double>(m.sb.size()) > kMaxStrategies)
    throw ValidationError("too many joint deterministic strategies");
  for (std::size_t k = 0; k < m.sa.size() * m.sb.size(); ++k) {
    m.q.push_back(prob.add_var());
    prob.add_nonnegative(LinExpr::variable(m.q.back()));
  }
  return m;
}

// Slot values of sum_l D_l q_l - shift * P, with the unknowns free.
std::vector<LinExpr> local_minus_scaled(const BipartiteTemplate& t, const LocalModel& m,
                                        const Correlation& p, const LinExpr& shift,
                                        SdpProblem& prob) {
  const Scenario& s = t.scenario;
  const auto any = [](const Strategy&) { return true; };
  std::vector<LinExpr> v = free_slots(t, prob, t.unknown_slot(0));
  v[0] = m.total() - shift;
  for (int x = 0; x < s.settings[0]; ++x)
    for (int a = 0; a + 1 < s.outcomes[0]; ++a)
      v[t.alice_slot(x, a)] =
          m.weights([&](const Strategy& l) { return l[x] == a; }, any) - p.alice_marginal(a, x) * shift;
  for (int y = 0; y < s.settings[1]; ++y)
    for (int b = 0; b + 1 < s.outcomes[1]; ++b)
      v[t.bob_slot(y, b)] =
          m.weights(any, [&](const Strategy& l) { return l[y] == b; }) - p.bob_marginal(b, y) * shift;
  for (int x = 0; x < s.settings[0]; ++x)
    for (int y = 0; y < s.settings[1]; ++y)
      for (int a = 0; a + 1 < s.outcomes[0]; ++a)
        for (int b = 0; b + 1 < s.outcomes[1]; ++b)
          v[t.joint_slot(x, y, a, b)] =
              m.weights([&](const Strategy& l) { return l[x] == a; },
                        [&](const Strategy& l) { return l[y] == b; }) -
              p(a, b, x, y) * shift;
  return v;
}

void add_bob_consistency(const BipartiteTemplate& t, const LocalModel& m, const Correlation& p,
                         SdpProblem& prob) {
  const Scenario& s = t.scenario;
  const auto any = [](const Strategy&) { return true; };
  for (int y = 0; y < s.settings[1]; ++y)
    for (int b = 0; b < s.outcomes[1]; ++b)
      prob.add_equality(m.weights(any, [&](const Strategy& l) { return l[y] == b; }) -
                        p.bob_marginal(b, y) * m.total());
}

DiBound finish(const SdpSolution& sol, int level, const std::string& what,
               const std::vector<AffineMatrix>& certificate) {
  DiBound out;
  out.level = level;
  out.diagnostics = diagnostics(sol);
  if (sol.status == SdpStatus::PrimalInfeasible) {
    out.status = DiStatus::Infeasible;
    return out;
  }
  require_acceptable(sol, what);
  out.value = sol.optimum;
  for (const AffineMatrix& m : certificate) out.certificate.push_back(sol.value(m));
  return out;
}

}  // namespace

NpaMembership q_membership(const Correlation& p, int level, double tol) {
  check_input(p, level);
  const BipartiteTemplate t = build_bipartite_template(p.scenario(), level);
  SdpProblem prob;
  const AffineMatrix gamma = template_matrix(t, observed_slots(t, p, prob));
  const LinExpr margin = LinExpr::variable(prob.add_var());
  AffineMatrix shifted = gamma;
  shifted.add_identity(-margin);
  prob.add_lmi(shifted);
  prob.set_objective(margin, Sense::Maximize);
  const SdpSolution sol = solve(prob);
  require_acceptable(sol, "q_membership");
  NpaMembership out;
  out.level = level;
  out.margin = sol.optimum;
  out.feasible = sol.optimum >= -tol;
  out.certificate = sol.value(gamma);
  out.diagnostics = diagnostics(sol);
  return out;
}

DiBound nonlocal_robustness(const Correlation& p, int level, bool consistent) {
  check_input(p, level);
  const BipartiteTemplate t = build_bipartite_template(p.scenario(), level);
  SdpProblem prob;
  const LocalModel m = add_local_model(p.scenario(), prob);
  // r Q = sum_l D_l q_l - P must lie in the cone over the relaxation.
  const AffineMatrix gamma = template_matrix(t, local_minus_scaled(t, m, p, 1.0, prob));
  prob.add_lmi(gamma);
  if (consistent) add_bob_consistency(t, m, p, prob);
  prob.set_objective(m.total() - 1.0, Sense::Minimize);
  return finish(solve(prob), level, "nonlocal_robustness", {gamma});
}

DiBound nonlocal_robustness_inverse(const Correlation& p, int level, bool consistent) {
  check_input(p, level);
  const BipartiteTemplate t = build_bipartite_template(p.scenario(), level);
  SdpProblem prob;
  const LocalModel m = add_local_model(p.scenario(), prob);
  const LinExpr s = m.total() - 1.0;
  prob.add_nonnegative(s);
  const AffineMatrix gamma = template_matrix(t, local_minus_scaled(t, m, p, s, prob));
  prob.add_lmi(gamma);
  if (consistent) add_bob_consistency(t, m, p, prob);
  prob.set_objective(s, Sense::Maximize);
  const SdpSolution sol = solve(prob);
  if (sol.status == SdpStatus::DualInfeasible) {
    DiBound out;
    out.level = level;
    out.value = 0.0;
    out.diagnostics = diagnostics(sol);
    return out;
  }
  DiBound out = finish(sol, level, "nonlocal_robustness_inverse", {gamma});
  if (!out.infeasible()) out.value = 1.0 / out.value;
  return out;
}

namespace {

DiBound entanglement_bound(const BipartiteTemplate& t, SdpProblem& prob,
                           const std::vector<LinExpr>& rho_slots, const std::string& what) {
  const std::vector<LinExpr> w = free_slots(t, prob, 0);
  const AffineMatrix chi_rho = template_matrix(t, rho_slots);
  const AffineMatrix chi_omega = template_matrix(t, w);
  prob.add_lmi(partial_transpose_alice(t, chi_omega));
  prob.add_lmi(chi_omega - chi_rho);
  prob.add_lmi(chi_omega);
  prob.add_lmi(chi_rho);
  prob.set_objective(w[0] - 1.0, Sense::Minimize);
  return finish(solve(prob), t.level, what, {chi_rho, chi_omega});
}

}  // namespace

DiBound er_di_mblhg(const Correlation& p, int level) {
  check_input(p, level);
  const BipartiteTemplate t = build_bipartite_template(p.scenario(), level);
  SdpProblem prob;
  const std::vector<LinExpr> rho = observed_slots(t, p, prob);
  return entanglement_bound(t, prob, rho, "er_di_mblhg");
}

DiBound er_di_bell(const BellFunctional& f, double observed, int level) {
  if (f.scenario.parties() != 2) throw ValidationError("er_di_bell: expected a bipartite functional");
  if (level < 1) throw ValidationError("level must be >= 1");
  const BipartiteTemplate t = build_bipartite_template(f.scenario, level);
  SdpProblem prob;
  std::vector<LinExpr> rho = free_slots(t, prob, 1);
  rho[0] = 1.0;
  const Scenario& s = f.scenario;
  LinExpr value;
  for (int x = 0; x < s.settings[0]; ++x)
    for (int y = 0; y < s.settings[1]; ++y)
      for (int a = 0; a < s.outcomes[0]; ++a)
        for (int b = 0; b < s.outcomes[1]; ++b) {
          const double c = f.coef(x, y, a, b);
          if (c != 0.0) value += c * slot_probability(t, rho, x, y, a, b);
        }
  prob.add_equality(value - observed);
  return entanglement_bound(t, prob, rho, "er_di_bell");
}

}  // namespace ammkit
