#include "ammkit/quantum.hpp"

#include <cmath>
#include <string>

namespace ammkit {

Scenario Scenario::bipartite(int nx, int ny, int na, int nb) {
  Scenario s{{nx, ny}, {na, nb}};
  s.validate();
  return s;
}

Scenario Scenario::tripartite(int nx, int ny, int nz, int na, int nb, int nc) {
  Scenario s{{nx, ny, nz}, {na, nb, nc}};
  s.validate();
  return s;
}

void Scenario::validate() const {
  if (settings.size() != outcomes.size() || (settings.size() != 2 && settings.size() != 3))
    throw ValidationError("scenario: need 2 or 3 parties");
  for (std::size_t i = 0; i < settings.size(); ++i)
    if (settings[i] < 1 || outcomes[i] < 1)
      throw ValidationError("scenario: settings and outcomes must be >= 1");
}

int MeasurementAssemblage::dim() const {
  if (povms.empty() || povms[0].empty()) return 0;
  return static_cast<int>(povms[0][0].rows());
}

void MeasurementAssemblage::validate(double tol) const {
  if (povms.empty()) throw ValidationError("measurement: no settings");
  const int d = dim();
  const int na = num_outcomes();
  if (d < 1 || na < 1) throw ValidationError("measurement: empty POVM");
  for (std::size_t x = 0; x < povms.size(); ++x) {
    if (static_cast<int>(povms[x].size()) != na)
      throw ValidationError("measurement: outcome count differs across settings");
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix& e : povms[x]) {
      if (e.rows() != d || e.cols() != d)
        throw ValidationError("measurement: element has shape " + shape_string(e));
      if (!is_hermitian(e, std::max(tol, kHermitianTol)) || min_eigenvalue(e) < -tol)
        throw ValidationError("measurement: element not PSD for setting " + std::to_string(x));
      sum += e;
    }
    if ((sum - identity(d)).cwiseAbs().maxCoeff() > tol)
      throw ValidationError("measurement: elements do not sum to identity for setting " +
                            std::to_string(x));
  }
}

bool MeasurementAssemblage::is_projective(double tol) const {
  for (const auto& setting : povms)
    for (const ComplexMatrix& e : setting)
      if ((e * e - e).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

int Assemblage::dim() const {
  if (states.empty() || states[0].empty()) return 0;
  return static_cast<int>(states[0][0].rows());
}

ComplexMatrix Assemblage::reduced_state(int x) const {
  ComplexMatrix s = ComplexMatrix::Zero(dim(), dim());
  for (const ComplexMatrix& r : states.at(x)) s += r;
  return s;
}

void Assemblage::validate(double tol) const {
  if (states.empty()) throw ValidationError("assemblage: no settings");
  const int d = dim();
  const int na = num_outcomes();
  if (d < 1 || na < 1) throw ValidationError("assemblage: empty");
  const ComplexMatrix ref = reduced_state(0);
  for (std::size_t x = 0; x < states.size(); ++x) {
    if (static_cast<int>(states[x].size()) != na)
      throw ValidationError("assemblage: outcome count differs across settings");
    double tr = 0.0;
    for (const ComplexMatrix& r : states[x]) {
      if (r.rows() != d || r.cols() != d)
        throw ValidationError("assemblage: state has shape " + shape_string(r));
      if (!is_hermitian(r, std::max(tol, kHermitianTol)) || min_eigenvalue(r) < -tol)
        throw ValidationError("assemblage: state not PSD for setting " + std::to_string(x));
      tr += r.trace().real();
    }
    if (std::abs(tr - 1.0) > tol)
      throw ValidationError("assemblage: total trace " + std::to_string(tr) + " for setting " +
                            std::to_string(x));
    if ((reduced_state(static_cast<int>(x)) - ref).cwiseAbs().maxCoeff() > tol)
      throw ValidationError("assemblage: signalling between settings 0 and " +
                            std::to_string(x));
  }
}

TripartiteAssemblage::TripartiteAssemblage(int nx_, int ny_, int na_, int nb_, int dim)
    : nx(nx_), ny(ny_), na(na_), nb(nb_),
      states(static_cast<std::size_t>(nx_) * ny_ * na_ * nb_, ComplexMatrix::Zero(dim, dim)) {}

ComplexMatrix& TripartiteAssemblage::at(int x, int y, int a, int b) {
  return states[((static_cast<std::size_t>(x) * ny + y) * na + a) * nb + b];
}

const ComplexMatrix& TripartiteAssemblage::at(int x, int y, int a, int b) const {
  return states[((static_cast<std::size_t>(x) * ny + y) * na + a) * nb + b];
}

int TripartiteAssemblage::dim() const {
  return states.empty() ? 0 : static_cast<int>(states[0].rows());
}

void TripartiteAssemblage::validate(double tol) const {
  if (states.empty()) throw ValidationError("tripartite assemblage: empty");
  const int d = dim();
  for (const ComplexMatrix& s : states)
    if (s.rows() != d || s.cols() != d || !is_hermitian(s, std::max(tol, kHermitianTol)) ||
        min_eigenvalue(s) < -tol)
      throw ValidationError("tripartite assemblage: entry not PSD");
  auto close = [&](const ComplexMatrix& p, const ComplexMatrix& q) {
    return (p - q).cwiseAbs().maxCoeff() <= tol;
  };
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      double tr = 0.0;
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) tr += at(x, y, a, b).trace().real();
      if (std::abs(tr - 1.0) > tol)
        throw ValidationError("tripartite assemblage: total trace differs from 1");
      // Bob's marginal independent of x, Alice's independent of y.
      for (int b = 0; b < nb; ++b) {
        ComplexMatrix s = ComplexMatrix::Zero(d, d), s0 = s;
        for (int a = 0; a < na; ++a) {
          s += at(x, y, a, b);
          s0 += at(0, y, a, b);
        }
        if (!close(s, s0)) throw ValidationError("tripartite assemblage: Alice signals");
      }
      for (int a = 0; a < na; ++a) {
        ComplexMatrix s = ComplexMatrix::Zero(d, d), s0 = s;
        for (int b = 0; b < nb; ++b) {
          s += at(x, y, a, b);
          s0 += at(x, 0, a, b);
        }
        if (!close(s, s0)) throw ValidationError("tripartite assemblage: Bob signals");
      }
      ComplexMatrix s = ComplexMatrix::Zero(d, d), s0 = s;
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
          s += at(x, y, a, b);
          s0 += at(0, 0, a, b);
        }
      if (!close(s, s0)) throw ValidationError("tripartite assemblage: reduced state varies");
    }
}

Correlation::Correlation(Scenario s) : scenario_(std::move(s)) {
  scenario_.validate();
  std::size_t n = 1;
  for (int v : scenario_.settings) n *= v;
  for (int v : scenario_.outcomes) n *= v;
  data_.assign(n, 0.0);
}

std::size_t Correlation::index2(int a, int b, int x, int y) const {
  const auto& s = scenario_;
  return ((static_cast<std::size_t>(x) * s.settings[1] + y) * s.outcomes[0] + a) *
             s.outcomes[1] + b;
}

std::size_t Correlation::index3(int a, int b, int c, int x, int y, int z) const {
  const auto& s = scenario_;
  std::size_t i = x;
  i = i * s.settings[1] + y;
  i = i * s.settings[2] + z;
  i = i * s.outcomes[0] + a;
  i = i * s.outcomes[1] + b;
  i = i * s.outcomes[2] + c;
  return i;
}

double& Correlation::operator()(int a, int b, int x, int y) { return data_[index2(a, b, x, y)]; }
double Correlation::operator()(int a, int b, int x, int y) const {
  return data_[index2(a, b, x, y)];
}
double& Correlation::operator()(int a, int b, int c, int x, int y, int z) {
  return data_[index3(a, b, c, x, y, z)];
}
double Correlation::operator()(int a, int b, int c, int x, int y, int z) const {
  return data_[index3(a, b, c, x, y, z)];
}

double Correlation::alice_marginal(int a, int x) const {
  double s = 0.0;
  for (int b = 0; b < nb(); ++b) s += (*this)(a, b, x, 0);
  return s;
}

double Correlation::bob_marginal(int b, int y) const {
  double s = 0.0;
  for (int a = 0; a < na(); ++a) s += (*this)(a, b, 0, y);
  return s;
}

double Correlation::max_violation() const {
  double worst = 0.0;
  for (double p : data_) worst = std::max(worst, -p);
  const auto& s = scenario_;
  if (s.parties() == 2) {
    for (int x = 0; x < nx(); ++x)
      for (int y = 0; y < ny(); ++y) {
        double tot = 0.0;
        for (int a = 0; a < na(); ++a)
          for (int b = 0; b < nb(); ++b) tot += (*this)(a, b, x, y);
        worst = std::max(worst, std::abs(tot - 1.0));
        for (int a = 0; a < na(); ++a) {
          double m = 0.0, m0 = 0.0;
          for (int b = 0; b < nb(); ++b) {
            m += (*this)(a, b, x, y);
            m0 += (*this)(a, b, x, 0);
          }
          worst = std::max(worst, std::abs(m - m0));
        }
        for (int b = 0; b < nb(); ++b) {
          double m = 0.0, m0 = 0.0;
          for (int a = 0; a < na(); ++a) {
            m += (*this)(a, b, x, y);
            m0 += (*this)(a, b, 0, y);
          }
          worst = std::max(worst, std::abs(m - m0));
        }
      }
    return worst;
  }
  const int nz = s.settings[2], nc = s.outcomes[2];
  for (int x = 0; x < nx(); ++x)
    for (int y = 0; y < ny(); ++y)
      for (int z = 0; z < nz; ++z) {
        double tot = 0.0;
        for (int a = 0; a < na(); ++a)
          for (int b = 0; b < nb(); ++b)
            for (int c = 0; c < nc; ++c) tot += (*this)(a, b, c, x, y, z);
        worst = std::max(worst, std::abs(tot - 1.0));
        // Marginalizing any one party must not depend on that party's setting.
        for (int a = 0; a < na(); ++a)
          for (int b = 0; b < nb(); ++b) {
            double m = 0.0, m0 = 0.0;
            for (int c = 0; c < nc; ++c) {
              m += (*this)(a, b, c, x, y, z);
              m0 += (*this)(a, b, c, x, y, 0);
            }
            worst = std::max(worst, std::abs(m - m0));
          }
        for (int a = 0; a < na(); ++a)
          for (int c = 0; c < nc; ++c) {
            double m = 0.0, m0 = 0.0;
            for (int b = 0; b < nb(); ++b) {
              m += (*this)(a, b, c, x, y, z);
              m0 += (*this)(a, b, c, x, 0, z);
            }
            worst = std::max(worst, std::abs(m - m0));
          }
        for (int b = 0; b < nb(); ++b)
          for (int c = 0; c < nc; ++c) {
            double m = 0.0, m0 = 0.0;
            for (int a = 0; a < na(); ++a) {
              m += (*this)(a, b, c, x, y, z);
              m0 += (*this)(a, b, c, 0, y, z);
            }
            worst = std::max(worst, std::abs(m - m0));
          }
      }
  return worst;
}

void Correlation::validate(double tol) const {
  const double v = max_violation();
  if (v > tol)
    throw ValidationError("correlation: positivity/normalization/no-signalling violated by " +
                          std::to_string(v));
}

Correlation Correlation::swapped() const {
  if (scenario_.parties() != 2) throw ValidationError("swapped: bipartite only");
  Correlation out(Scenario::bipartite(ny(), nx(), nb(), na()));
  for (int x = 0; x < nx(); ++x)
    for (int y = 0; y < ny(); ++y)
      for (int a = 0; a < na(); ++a)
        for (int b = 0; b < nb(); ++b) out(b, a, y, x) = (*this)(a, b, x, y);
  return out;
}

Correlation marginal_correlation(const TripartiteAssemblage& t) {
  Correlation p(Scenario::bipartite(t.nx, t.ny, t.na, t.nb));
  for (int x = 0; x < t.nx; ++x)
    for (int y = 0; y < t.ny; ++y)
      for (int a = 0; a < t.na; ++a)
        for (int b = 0; b < t.nb; ++b) p(a, b, x, y) = t.at(x, y, a, b).trace().real();
  return p;
}

ComplexMatrix maximally_entangled(int d) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return projector(v);
}

ComplexMatrix isotropic_state(int d, double v) {
  if (d < 2) throw ValidationError("isotropic_state: d must be >= 2");
  const double lo = -1.0 / (d * d - 1.0);
  if (v < lo - 1e-12 || v > 1.0 + 1e-12)
    throw ValidationError("isotropic_state: visibility " + std::to_string(v) + " outside [" +
                          std::to_string(lo) + ", 1]");
  return v * maximally_entangled(d) + ((1.0 - v) / (d * d)) * identity(d * d);
}

ComplexMatrix pure_partially_entangled(double theta) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = std::cos(theta);
  v(3) = std::sin(theta);
  return projector(v);
}

std::vector<ComplexMatrix> qubit_projective(const std::array<double, 3>& n) {
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(norm - 1.0) > 1e-9)
    throw ValidationError("qubit_projective: Bloch vector must have unit length");
  const ComplexMatrix ns = n[0] * pauli_x() + n[1] * pauli_y() + n[2] * pauli_z();
  return {0.5 * (identity(2) + ns), 0.5 * (identity(2) - ns)};
}

MeasurementAssemblage qubit_measurements(const std::vector<std::array<double, 3>>& blochs) {
  MeasurementAssemblage m;
  for (const auto& n : blochs) m.povms.push_back(qubit_projective(n));
  return m;
}

std::vector<ComplexMatrix> basis_measurement(const ComplexMatrix& unitary) {
  std::vector<ComplexMatrix> out;
  for (Eigen::Index k = 0; k < unitary.cols(); ++k) out.push_back(projector(unitary.col(k)));
  return out;
}

Correlation born_correlation(const ComplexMatrix& rho, const MeasurementAssemblage& alice,
                             const MeasurementAssemblage& bob) {
  const int da = alice.dim(), db = bob.dim();
  if (rho.rows() != da * db || rho.cols() != da * db)
    throw DimensionError("born_correlation: state " + shape_string(rho) +
                         " does not match local dimensions");
  const Assemblage sigma = assemblage_from_state(rho, alice, db);
  return correlation_from_assemblage(sigma, bob);
}

Correlation born_correlation(const ComplexMatrix& rho, const MeasurementAssemblage& alice,
                             const MeasurementAssemblage& bob,
                             const MeasurementAssemblage& charlie) {
  const int dc = charlie.dim();
  const TripartiteAssemblage t = tripartite_assemblage_from_state(rho, alice, bob, dc);
  Correlation p(Scenario::tripartite(alice.num_settings(), bob.num_settings(),
                                     charlie.num_settings(), alice.num_outcomes(),
                                     bob.num_outcomes(), charlie.num_outcomes()));
  for (int x = 0; x < t.nx; ++x)
    for (int y = 0; y < t.ny; ++y)
      for (int z = 0; z < charlie.num_settings(); ++z)
        for (int a = 0; a < t.na; ++a)
          for (int b = 0; b < t.nb; ++b)
            for (int c = 0; c < charlie.num_outcomes(); ++c)
              p(a, b, c, x, y, z) = (t.at(x, y, a, b) * charlie.povms[z][c]).trace().real();
  return p;
}

Assemblage assemblage_from_state(const ComplexMatrix& rho, const MeasurementAssemblage& alice,
                                 int dim_b) {
  const int da = alice.dim();
  if (rho.rows() != da * dim_b || rho.cols() != da * dim_b)
    throw DimensionError("assemblage_from_state: state " + shape_string(rho) +
                         " does not match " + std::to_string(da) + "x" +
                         std::to_string(dim_b));
  Assemblage out;
  out.states.resize(alice.num_settings());
  for (int x = 0; x < alice.num_settings(); ++x)
    for (const ComplexMatrix& e : alice.povms[x])
      out.states[x].push_back(
          partial_trace(kron(e, identity(dim_b)) * rho, {da, dim_b}, Subsystem::A));
  return out;
}

Correlation correlation_from_assemblage(const Assemblage& sigma, const MeasurementAssemblage& bob) {
  if (sigma.dim() != bob.dim())
    throw DimensionError("correlation_from_assemblage: dimension mismatch");
  Correlation p(Scenario::bipartite(sigma.num_settings(), bob.num_settings(),
                                    sigma.num_outcomes(), bob.num_outcomes()));
  for (int x = 0; x < sigma.num_settings(); ++x)
    for (int y = 0; y < bob.num_settings(); ++y)
      for (int a = 0; a < sigma.num_outcomes(); ++a)
        for (int b = 0; b < bob.num_outcomes(); ++b)
          p(a, b, x, y) = (sigma.states[x][a] * bob.povms[y][b]).trace().real();
  return p;
}

TripartiteAssemblage tripartite_assemblage_from_state(const ComplexMatrix& rho,
                                                      const MeasurementAssemblage& alice,
                                                      const MeasurementAssemblage& bob,
                                                      int dim_c) {
  const int da = alice.dim(), db = bob.dim();
  const int dab = da * db;
  if (rho.rows() != dab * dim_c || rho.cols() != dab * dim_c)
    throw DimensionError("tripartite_assemblage_from_state: state " + shape_string(rho) +
                         " does not match local dimensions");
  TripartiteAssemblage t(alice.num_settings(), bob.num_settings(), alice.num_outcomes(),
                         bob.num_outcomes(), dim_c);
  for (int x = 0; x < t.nx; ++x)
    for (int y = 0; y < t.ny; ++y)
      for (int a = 0; a < t.na; ++a)
        for (int b = 0; b < t.nb; ++b) {
          const ComplexMatrix eab = kron(alice.povms[x][a], bob.povms[y][b]);
          t.at(x, y, a, b) =
              partial_trace(kron(eab, identity(dim_c)) * rho, {dab, dim_c}, Subsystem::A);
        }
  return t;
}

std::vector<Strategy> deterministic_strategies(int n_settings, int n_outcomes) {
  if (n_settings < 1 || n_outcomes < 1)
    throw ValidationError("deterministic_strategies: counts must be >= 1");
  const double count = std::pow(static_cast<double>(n_outcomes), n_settings);
  if (count > kMaxStrategies)
    throw ValidationError("deterministic_strategies: " + std::to_string(n_outcomes) + "^" +
                          std::to_string(n_settings) + " strategies exceed the cap of 1e6");
  std::vector<Strategy> out;
  Strategy s(n_settings, 0);
  while (true) {
    out.push_back(s);
    int i = n_settings - 1;
    while (i >= 0 && ++s[i] == n_outcomes) s[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

TripartiteAssemblage pr_box_assemblage(const ComplexMatrix& rho_hat) {
  if (!is_psd(rho_hat) || std::abs(rho_hat.trace().real() - 1.0) > 1e-9)
    throw ValidationError("pr_box_assemblage: rho_hat must be a unit-trace PSD matrix");
  TripartiteAssemblage t(2, 2, 2, 2, static_cast<int>(rho_hat.rows()));
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const int parity = (a ^ b) ^ (x * y);
          t.at(x, y, a, b) = 0.25 * (1.0 - (parity % 2 == 0 ? 1.0 : -1.0)) * rho_hat;
        }
  return t;
}

}  // namespace ammkit
