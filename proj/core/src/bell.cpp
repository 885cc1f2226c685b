#include "ammkit/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ammkit {

BellFunctional::BellFunctional(std::string name_, Scenario s)
    : name(std::move(name_)), scenario(std::move(s)) {
  scenario.validate();
  if (scenario.parties() != 2) throw ValidationError("BellFunctional: bipartite only");
  coefficients.assign(static_cast<std::size_t>(scenario.settings[0]) * scenario.settings[1] *
                          scenario.outcomes[0] * scenario.outcomes[1],
                      0.0);
}

double& BellFunctional::coef(int x, int y, int a, int b) {
  const auto& s = scenario;
  return coefficients[((static_cast<std::size_t>(x) * s.settings[1] + y) * s.outcomes[0] + a) *
                          s.outcomes[1] + b];
}

double BellFunctional::coef(int x, int y, int a, int b) const {
  return const_cast<BellFunctional*>(this)->coef(x, y, a, b);
}

double bell_value(const BellFunctional& f, const Correlation& p) {
  if (!(p.scenario() == f.scenario))
    throw ValidationError("bell_value: functional '" + f.name +
                          "' does not match the correlation's scenario");
  double v = 0.0;
  for (std::size_t i = 0; i < f.coefficients.size(); ++i) v += f.coefficients[i] * p.data()[i];
  return v;
}

double compute_local_bound(const BellFunctional& f) {
  const auto& s = f.scenario;
  const auto sa = deterministic_strategies(s.settings[0], s.outcomes[0]);
  const auto sb = deterministic_strategies(s.settings[1], s.outcomes[1]);
  double best = -std::numeric_limits<double>::infinity();
  for (const Strategy& la : sa)
    for (const Strategy& lb : sb) {
      double v = 0.0;
      for (int x = 0; x < s.settings[0]; ++x)
        for (int y = 0; y < s.settings[1]; ++y) v += f.coef(x, y, la[x], lb[y]);
      best = std::max(best, v);
    }
  return best;
}

namespace {

// Adds sign * E_xy to the functional.
void add_correlator(BellFunctional& f, int x, int y, double sign) {
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f.coef(x, y, a, b) += sign * ((a + b) % 2 == 0 ? 1.0 : -1.0);
}

void add_alice_marginal(BellFunctional& f, int a, int x, double w) {
  for (int b = 0; b < f.scenario.outcomes[1]; ++b) f.coef(x, 0, a, b) += w;
}

void add_bob_marginal(BellFunctional& f, int b, int y, double w) {
  for (int a = 0; a < f.scenario.outcomes[0]; ++a) f.coef(0, y, a, b) += w;
}

}  // namespace

BellFunctional chsh() {
  BellFunctional f("chsh", Scenario::bipartite(2, 2, 2, 2));
  add_correlator(f, 0, 0, -1.0);
  add_correlator(f, 0, 1, 1.0);
  add_correlator(f, 1, 0, 1.0);
  add_correlator(f, 1, 1, 1.0);
  f.local_bound = 2.0;
  f.quantum_bound = 2.0 * std::sqrt(2.0);
  return f;
}

BellFunctional clauser_horne() {
  BellFunctional f("ch", Scenario::bipartite(2, 2, 2, 2));
  f.coef(0, 0, 0, 0) += 1.0;
  f.coef(0, 1, 0, 0) += 1.0;
  f.coef(1, 0, 0, 0) += 1.0;
  f.coef(1, 1, 0, 0) -= 1.0;
  add_alice_marginal(f, 0, 0, -1.0);
  add_bob_marginal(f, 0, 0, -1.0);
  f.local_bound = 0.0;
  f.quantum_bound = (std::sqrt(2.0) - 1.0) / 2.0;
  return f;
}

BellFunctional elegant() {
  BellFunctional f("elegant", Scenario::bipartite(4, 3, 2, 2));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 3; ++y) {
      const int exponent = (x == y + 1 ? 1 : 0) + (x == 0 ? 1 : 0);
      add_correlator(f, x, y, exponent % 2 == 0 ? -1.0 : 1.0);
    }
  f.local_bound = 6.0;
  f.quantum_bound = 4.0 * std::sqrt(3.0);
  return f;
}

BellFunctional i3322() {
  BellFunctional f("i3322", Scenario::bipartite(3, 3, 2, 2));
  const double joint[3][3] = {{1, 1, 1}, {1, 1, -1}, {1, -1, 0}};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) f.coef(x, y, 0, 0) += joint[x][y];
  add_alice_marginal(f, 0, 0, -2.0);
  add_alice_marginal(f, 0, 1, -1.0);
  add_bob_marginal(f, 0, 0, -1.0);
  f.local_bound = 0.0;
  f.quantum_bound = 0.25;
  return f;
}

BellFunctional i2233() {
  BellFunctional f("i2233", Scenario::bipartite(2, 2, 3, 3));
  auto mod3 = [](int v) { return ((v % 3) + 3) % 3; };
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) f.coef(0, 0, a, b) += 1.0;
      if (b == mod3(a + 1)) f.coef(1, 0, a, b) += 1.0;
      if (a == b) f.coef(1, 1, a, b) += 1.0;
      if (b == a) f.coef(0, 1, a, b) += 1.0;
      if (a == mod3(b - 1)) f.coef(0, 0, a, b) -= 1.0;
      if (b == a) f.coef(1, 0, a, b) -= 1.0;
      if (a == mod3(b - 1)) f.coef(1, 1, a, b) -= 1.0;
      if (b == mod3(a - 1)) f.coef(0, 1, a, b) -= 1.0;
    }
  f.local_bound = 2.0;
  f.quantum_bound = 1.0 + std::sqrt(11.0 / 3.0);
  return f;
}

double max_chsh_value(const Correlation& p) {
  if (!(p.scenario() == Scenario::bipartite(2, 2, 2, 2)))
    throw ValidationError("max_chsh_value: needs the 2-setting binary scenario");
  double e[2][2];
  double total = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      e[x][y] = p(0, 0, x, y) + p(1, 1, x, y) - p(0, 1, x, y) - p(1, 0, x, y);
      total += e[x][y];
    }
  double best = 0.0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) best = std::max(best, std::abs(total - 2.0 * e[x][y]));
  return best;
}

MeasurementAssemblage chsh_alice_settings() {
  return qubit_measurements({{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}});
}

MeasurementAssemblage chsh_bob_settings() {
  const double r = 1.0 / std::sqrt(2.0);
  return qubit_measurements({{-r, 0.0, r}, {r, 0.0, r}});
}

}  // namespace ammkit
