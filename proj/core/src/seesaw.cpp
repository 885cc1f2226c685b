#include <cmath>
#include <limits>
#include <random>

#include "ammkit/bell.hpp"
#include "ammkit/solver.hpp"

namespace ammkit {

namespace {

ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  return Eigen::MatrixXcd(qr.householderQ());
}

// Projective measurement whose outcomes split the columns of a random
// unitary round-robin.
MeasurementAssemblage random_projective(int n_settings, int n_outcomes, int d,
                                        std::mt19937_64& rng) {
  MeasurementAssemblage m;
  for (int x = 0; x < n_settings; ++x) {
    const ComplexMatrix u = random_unitary(d, rng);
    std::vector<ComplexMatrix> povm(n_outcomes, ComplexMatrix::Zero(d, d));
    for (int k = 0; k < d; ++k) povm[k % n_outcomes] += projector(u.col(k));
    m.povms.push_back(std::move(povm));
  }
  return m;
}

// POVM maximizing sum_a Re tr(E_a W_a).
std::vector<ComplexMatrix> best_povm(const std::vector<ComplexMatrix>& w) {
  const int n = static_cast<int>(w.size());
  const int d = static_cast<int>(w[0].rows());
  if (n == 1) return {identity(d)};
  if (n == 2) {
    const HermitianEigen e = eig_hermitian(0.5 * (w[0] - w[1] + (w[0] - w[1]).adjoint()));
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
      if (e.values(k) > 0.0) p += projector(e.vectors.col(k));
    return {p, identity(d) - p};
  }
  SdpProblem prob;
  std::vector<HermitianExpr> elems;
  HermitianExpr sum = HermitianExpr::constant(-identity(d));
  LinExpr obj;
  for (int a = 0; a < n; ++a) {
    elems.push_back(prob.add_hermitian_psd(d));
    sum += elems.back();
    obj += elems.back().trace_with(0.5 * (w[a] + w[a].adjoint()));
  }
  prob.add_hermitian_equality(sum);
  prob.set_objective(obj, Sense::Maximize);
  const SdpSolution sol = solve(prob);
  std::vector<ComplexMatrix> out;
  for (const HermitianExpr& e : elems) {
    const ComplexMatrix v = sol.value(e);
    out.push_back(0.5 * (v + v.adjoint()));
  }
  return out;
}

// Per-setting operators W[x][a] = sum_{yb} beta[x][y][a][b] K[y][b], where
// K[y][b] is the other party's element pushed through the state.
std::vector<std::vector<ComplexMatrix>> weights(
    const BellFunctional& f, const std::vector<std::vector<ComplexMatrix>>& k, bool for_alice) {
  const auto& s = f.scenario;
  const int nx = for_alice ? s.settings[0] : s.settings[1];
  const int na = for_alice ? s.outcomes[0] : s.outcomes[1];
  const int ny = for_alice ? s.settings[1] : s.settings[0];
  const int nb = for_alice ? s.outcomes[1] : s.outcomes[0];
  const int d = static_cast<int>(k[0][0].rows());
  std::vector<std::vector<ComplexMatrix>> w(nx, std::vector<ComplexMatrix>(na, ComplexMatrix::Zero(d, d)));
  for (int x = 0; x < nx; ++x)
    for (int a = 0; a < na; ++a)
      for (int y = 0; y < ny; ++y)
        for (int b = 0; b < nb; ++b) {
          const double c = for_alice ? f.coef(x, y, a, b) : f.coef(y, x, b, a);
          if (c != 0.0) w[x][a] += c * k[y][b];
        }
  return w;
}

}  // namespace

MeasurementAssemblage best_response_alice(const BellFunctional& f, const ComplexMatrix& rho,
                                          BipartiteDims dims, const MeasurementAssemblage& bob) {
  std::vector<std::vector<ComplexMatrix>> k(bob.num_settings());
  for (int y = 0; y < bob.num_settings(); ++y)
    for (const ComplexMatrix& e : bob.povms[y])
      k[y].push_back(partial_trace(rho * kron(identity(dims.a), e), dims, Subsystem::B));
  const auto w = weights(f, k, true);
  MeasurementAssemblage out;
  for (const auto& wx : w) out.povms.push_back(best_povm(wx));
  return out;
}

MeasurementAssemblage best_response_bob(const BellFunctional& f, const ComplexMatrix& rho,
                                        BipartiteDims dims, const MeasurementAssemblage& alice) {
  const Assemblage sigma = assemblage_from_state(rho, alice, dims.b);
  const auto w = weights(f, sigma.states, false);
  MeasurementAssemblage out;
  for (const auto& wy : w) out.povms.push_back(best_povm(wy));
  return out;
}

SeesawResult seesaw_optimize(const BellFunctional& f, const ComplexMatrix& rho, BipartiteDims dims,
                             const SeesawOptions& opts) {
  const auto& s = f.scenario;
  if (rho.rows() != dims.a * dims.b) throw DimensionError("seesaw_optimize: state dimension");
  SeesawResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(r));
    MeasurementAssemblage bob = random_projective(s.settings[1], s.outcomes[1], dims.b, rng);
    MeasurementAssemblage alice;
    double value = -std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      alice = best_response_alice(f, rho, dims, bob);
      bob = best_response_bob(f, rho, dims, alice);
      const double v = bell_value(f, born_correlation(rho, alice, bob));
      if (v - value < opts.tol) {
        converged = true;
        value = std::max(value, v);
        break;
      }
      value = v;
    }
    if (value > best.value + 1e-12) {
      best.alice = alice;
      best.bob = bob;
      best.value = value;
      best.converged = converged;
      best.best_restart = r;
    }
  }
  return best;
}

}  // namespace ammkit
