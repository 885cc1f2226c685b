#include "ammkit/amm.hpp"

#include <map>

namespace ammkit {

int AmmTemplate::slot(const AmmEntry& e) const {
  switch (e.kind) {
    case EntryKind::Normalization: return 0;
    case EntryKind::Probability: return probability_slot(e.setting, e.outcome);
    case EntryKind::Unknown: return 1 + n_settings * (n_outcomes - 1) + e.unknown;
    case EntryKind::Zero: break;
  }
  return -1;
}

AmmTemplate build_template(int n_settings, int n_outcomes, int level) {
  AmmTemplate t;
  t.n_settings = n_settings;
  t.n_outcomes = n_outcomes;
  t.level = level;
  t.words = enumerate_words(n_settings, n_outcomes, level);
  const int n = t.size();
  t.entries.resize(static_cast<std::size_t>(n) * n);
  std::map<OperatorWord, int> ids;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      AmmEntry& e = t.entries[i * n + j];
      const auto w = multiply(t.words[i].reversed(), t.words[j]);
      if (!w) continue;
      if (w->is_identity()) {
        e.kind = EntryKind::Normalization;
      } else if (w->is_projector()) {
        e.kind = EntryKind::Probability;
        e.setting = w->letters()[0].setting;
        e.outcome = w->letters()[0].outcome;
      } else {
        const OperatorWord key = canonical(*w);
        auto [it, inserted] = ids.try_emplace(key, t.num_unknowns());
        if (inserted) t.unknowns.push_back(key);
        e.kind = EntryKind::Unknown;
        e.unknown = it->second;
      }
    }
  return t;
}

AmmTemplate build_template(const Scenario& s, int level, int party) {
  s.validate();
  if (party < 0 || party >= s.parties()) throw ValidationError("build_template: no such party");
  return build_template(s.settings[party], s.outcomes[party], level);
}

nlohmann::json template_to_json(const AmmTemplate& t) {
  nlohmann::json j;
  j["level"] = t.level;
  j["settings"] = t.n_settings;
  j["outcomes"] = t.n_outcomes;
  for (const OperatorWord& w : t.words) j["words"].push_back(w.to_string());
  j["unknowns"] = nlohmann::json::array();
  for (const OperatorWord& w : t.unknowns) j["unknowns"].push_back(w.to_string());
  for (int i = 0; i < t.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < t.size(); ++k) {
      const AmmEntry& e = t.entry(i, k);
      switch (e.kind) {
        case EntryKind::Zero: row.push_back("0"); break;
        case EntryKind::Normalization: row.push_back("tr"); break;
        case EntryKind::Probability:
          row.push_back("P(" + std::to_string(e.outcome) + "|" + std::to_string(e.setting) + ")");
          break;
        case EntryKind::Unknown: row.push_back("u" + std::to_string(e.unknown)); break;
      }
    }
    j["entries"].push_back(row);
  }
  return j;
}

AffineMatrix template_matrix(const AmmTemplate& t, const std::vector<LinExpr>& slots) {
  AffineMatrix m(t.size());
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j) {
      const int s = t.slot(t.entry(i, j));
      if (s >= 0) m(i, j) = slots[s];
    }
  return m;
}

ComplexMatrix instantiate_numeric(const AmmTemplate& t, const ComplexMatrix& state,
                                  const MeasurementAssemblage& m) {
  if (!m.is_projective()) throw ValidationError("instantiate_numeric: measurements must be projective");
  if (m.num_settings() != t.n_settings || m.num_outcomes() != t.n_outcomes)
    throw ValidationError("instantiate_numeric: measurements do not match the template");
  std::vector<ComplexMatrix> ops;
  for (const OperatorWord& w : t.words) ops.push_back(word_operator(w, m));
  ComplexMatrix chi(t.size(), t.size());
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j) chi(i, j) = (state * ops[i].adjoint() * ops[j]).trace();
  return chi;
}

std::vector<std::vector<ComplexMatrix>> instantiate_numeric(const AmmTemplate& t,
                                                            const Assemblage& a,
                                                            const MeasurementAssemblage& m) {
  std::vector<std::vector<ComplexMatrix>> out;
  for (const auto& row : a.states) {
    std::vector<ComplexMatrix> r;
    for (const ComplexMatrix& s : row) r.push_back(instantiate_numeric(t, s, m));
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_string(DiStatus s) { return s == DiStatus::Solved ? "solved" : "infeasible"; }

namespace {

// Moment slots of the observed AMMs chi[rho_{a|x}] and of the hidden
// chi[sigma_lambda], plus the shared SDP.
struct SteeringProgram {
  SdpProblem p;
  AmmTemplate t;
  int nx = 0, na = 0;
  std::vector<Strategy> strategies;
  std::vector<std::vector<LinExpr>> observed;  // [x * na + a][slot]
  std::vector<std::vector<LinExpr>> hidden;    // [lambda][slot]
  std::vector<AffineMatrix> observed_m;
  std::vector<AffineMatrix> hidden_m;

  SteeringProgram(const Scenario& s, int level)
      : t(build_template(s, level, 1)), nx(s.settings[0]), na(s.outcomes[0]) {
    strategies = deterministic_strategies(nx, na);
  }

  std::vector<LinExpr> free_slots(int from) {
    std::vector<LinExpr> v(t.num_slots());
    for (int k = from; k < t.num_slots(); ++k) v[k] = LinExpr::variable(p.add_var());
    return v;
  }

  // Known probabilities fixed from P, unknowns free.
  void observe(const Correlation& c) {
    const int unknown0 = 1 + t.n_settings * (t.n_outcomes - 1);
    for (int x = 0; x < nx; ++x)
      for (int a = 0; a < na; ++a) {
        std::vector<LinExpr> v = free_slots(unknown0);
        v[0] = c.alice_marginal(a, x);
        for (int y = 0; y < t.n_settings; ++y)
          for (int b = 0; b + 1 < t.n_outcomes; ++b) v[t.probability_slot(y, b)] = c(a, b, x, y);
        observed.push_back(std::move(v));
      }
  }

  // Every slot free; only the moment structure is imposed.
  void observe_free() {
    for (int k = 0; k < nx * na; ++k) observed.push_back(free_slots(0));
  }

  LinExpr slot_sum(int x, int k) const {
    LinExpr s;
    for (int a = 0; a < na; ++a) s += observed[x * na + a][k];
    return s;
  }

  // sum_a chi[rho_{a|x}] independent of x; constant slots are skipped.
  void add_no_signalling() {
    for (int x = 1; x < nx; ++x)
      for (int k = 0; k < t.num_slots(); ++k) {
        LinExpr d = slot_sum(x, k) - slot_sum(0, k);
        d.compress();
        if (!d.is_constant()) p.add_equality(d);
      }
  }

  void add_hidden() {
    for (std::size_t l = 0; l < strategies.size(); ++l) hidden.push_back(free_slots(0));
  }

  LinExpr hidden_trace() const {
    LinExpr s;
    for (const auto& h : hidden) s += h[0];
    return s;
  }

  // sum_l [chi(sigma_l)]_{y,b} = (sum_l tr chi(sigma_l)) * P(b|y).
  void add_consistency(const Correlation& c) {
    const LinExpr total = hidden_trace();
    for (int y = 0; y < t.n_settings; ++y)
      for (int b = 0; b + 1 < t.n_outcomes; ++b) {
        LinExpr lhs;
        for (const auto& h : hidden) lhs += h[t.probability_slot(y, b)];
        p.add_equality(lhs - c.bob_marginal(b, y) * total);
      }
  }

  AffineMatrix response(int x, int a) const {
    AffineMatrix s(t.size());
    for (std::size_t l = 0; l < strategies.size(); ++l)
      if (strategies[l][x] == a) s += hidden_m[l];
    return s;
  }

  // robustness: sum_l D chi_l >= chi_{a|x}; weight: the reverse.
  void add_matrices(bool robustness) {
    for (const auto& v : observed) observed_m.push_back(template_matrix(t, v));
    for (const auto& v : hidden) hidden_m.push_back(template_matrix(t, v));
    for (const AffineMatrix& m : observed_m) p.add_lmi(m);
    for (const AffineMatrix& m : hidden_m) p.add_lmi(m);
    for (int x = 0; x < nx; ++x)
      for (int a = 0; a < na; ++a) {
        const AffineMatrix r = response(x, a);
        p.add_lmi(robustness ? r - observed_m[x * na + a] : observed_m[x * na + a] - r);
      }
  }

  DiBound run(const std::string& what) {
    const SdpSolution sol = solve(p);
    DiBound out;
    out.level = t.level;
    out.diagnostics = diagnostics(sol);
    if (sol.status == SdpStatus::PrimalInfeasible) {
      out.status = DiStatus::Infeasible;
      return out;
    }
    require_acceptable(sol, what);
    out.value = sol.optimum;
    for (const AffineMatrix& m : observed_m) out.certificate.push_back(sol.value(m));
    return out;
  }
};

void check_bipartite(const Correlation& c, int level) {
  if (c.scenario().parties() != 2) throw ValidationError("expected a bipartite correlation");
  c.validate(1e-7);
  if (level < 1) throw ValidationError("level must be >= 1");
}

DiBound steering_bound(const Correlation& c, int level, bool robustness, bool consistent,
                       const std::string& what) {
  check_bipartite(c, level);
  SteeringProgram g(c.scenario(), level);
  g.observe(c);
  g.add_no_signalling();
  g.add_hidden();
  if (consistent) g.add_consistency(c);
  g.add_matrices(robustness);
  const LinExpr total = g.hidden_trace();
  g.p.set_objective(robustness ? total - 1.0 : 1.0 - total, Sense::Minimize);
  return g.run(what);
}

}  // namespace

DiBound sr_di(const Correlation& p, int level) {
  return steering_bound(p, level, true, false, "sr_di");
}

DiBound sr_di_consistent(const Correlation& p, int level) {
  return steering_bound(p, level, true, true, "sr_di_consistent");
}

DiBound sw_di(const Correlation& p, int level, bool consistent) {
  return steering_bound(p, level, false, consistent, "sw_di");
}

DiBound sr_di_bell(const BellFunctional& f, double observed, int level) {
  if (f.scenario.parties() != 2) throw ValidationError("sr_di_bell: expected a bipartite functional");
  if (level < 1) throw ValidationError("level must be >= 1");
  SteeringProgram g(f.scenario, level);
  g.observe_free();
  g.add_no_signalling();
  // sum_a tr chi[rho_{a|x}] = 1, which full data would have implied.
  g.p.add_equality(g.slot_sum(0, 0) - 1.0);

  const int nb = g.t.n_outcomes;
  LinExpr value;
  for (int x = 0; x < g.nx; ++x)
    for (int y = 0; y < g.t.n_settings; ++y)
      for (int a = 0; a < g.na; ++a) {
        const auto& v = g.observed[x * g.na + a];
        LinExpr last = v[0];
        for (int b = 0; b + 1 < nb; ++b) {
          const LinExpr pb = v[g.t.probability_slot(y, b)];
          value += f.coef(x, y, a, b) * pb;
          last -= pb;
        }
        value += f.coef(x, y, a, nb - 1) * last;
      }
  g.p.add_equality(value - observed);
  g.add_hidden();
  g.add_matrices(true);
  g.p.set_objective(g.hidden_trace() - 1.0, Sense::Minimize);
  return g.run("sr_di_bell");
}

}  // namespace ammkit
