#include "figures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ammkit/amm.hpp"
#include "ammkit/entanglement.hpp"
#include "ammkit/incompat.hpp"
#include "ammkit/npa.hpp"
#include "ammkit/steering.hpp"

namespace ammkit::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Solver failures and infeasible relaxations become NaN cells.
double guarded(const std::function<double()>& f) {
  try {
    return f();
  } catch (const SolverFailure&) {
    return kNan;
  }
}

double bound_value(const DiBound& b) { return b.infeasible() ? kNan : b.value; }

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) return {hi};
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

// Evaluates rows in parallel; each worker writes only its own slot, so the
// output order is the parameter order.
void fill_rows(Table& t, std::size_t n, int threads,
               const std::function<std::vector<std::string>(std::size_t)>& row) {
  t.rows.assign(n, {});
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          t.rows[i] = row(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

SeesawOptions seesaw_opts(const FigureOptions& o) {
  SeesawOptions s;
  s.seed = o.seed;
  return s;
}

struct Family {
  std::string label;
  BellFunctional functional;
  MeasurementAssemblage alice, bob;
};

Family chsh_family() {
  return {"2222", chsh(), chsh_alice_settings(), chsh_bob_settings()};
}

Family seesaw_family(const std::string& label, const BellFunctional& f, int d,
                     const FigureOptions& o) {
  const SeesawResult r = seesaw_optimize(f, maximally_entangled(d), {d, d}, seesaw_opts(o));
  return {label, f, r.alice, r.bob};
}

// ER bounds along the isotropic family for one Bell scenario.
std::vector<std::string> isotropic_row(const Family& fam, int d, double v, int level) {
  const Correlation p = born_correlation(isotropic_state(d, v), fam.alice, fam.bob);
  const double mblhg = guarded([&] { return bound_value(er_di_mblhg(p, level)); });
  const double amm = guarded([&] { return bound_value(sr_di(p, level)); });
  const double nr = guarded([&] { return bound_value(nonlocal_robustness(p, level, false)); });
  return {fmt(v), fmt(bell_value(fam.functional, p)), fmt(er_isotropic_analytic(d, v)),
          fmt(mblhg), fmt(amm), fmt(nr)};
}

Table fig1(const FigureOptions& o) {
  const int level = o.level.value_or(3);
  const double r2 = std::numbers::sqrt2;
  Table t;
  t.header = {"v", "chsh", "er_exact", "er_di_mblhg", "sr_di", "nr", "er_fit"};
  const Family fam = chsh_family();
  const std::vector<double> vs = linspace(1.0 / r2, 1.0, o.grid);
  fill_rows(t, vs.size(), o.threads, [&](std::size_t i) {
    std::vector<std::string> r = isotropic_row(fam, 2, vs[i], level);
    r.push_back(fmt((r2 * vs[i] - 1.0) / (r2 - 1.0)));
    return r;
  });
  return t;
}

Table fig2(const FigureOptions& o) {
  const int level = o.level.value_or(1);
  Table t;
  t.header = {"v", "i2233", "er_exact", "er_di_mblhg", "sr_di", "nr"};
  const Family fam = seesaw_family("2233", i2233(), 3, o);
  const std::vector<double> vs = linspace(0.6, 1.0, o.grid);
  fill_rows(t, vs.size(), o.threads,
            [&](std::size_t i) { return isotropic_row(fam, 3, vs[i], level); });
  return t;
}

// Incompatibility chain on CH-optimal correlations of cos t|00> + sin t|11>.
// With `bob_side` the roles are exchanged so the bounds concern Bob's
// measurements.
Table fig3(const FigureOptions& o, bool bob_side) {
  const int level = o.level.value_or(2);
  Table t;
  t.header = {"theta", "ch", "ir", "src", "sr", "src_di", "sr_di", "nrc"};
  const MeasurementAssemblage alice = qubit_measurements({{1, 0, 0}, {0, 0, 1}});
  const std::vector<double> ths = linspace(0.0, std::numbers::pi / 4, o.grid + 1);
  fill_rows(t, ths.size() - 1, o.threads, [&](std::size_t i) {
    const double th = ths[i + 1];
    const ComplexMatrix rho = pure_partially_entangled(th);
    const MeasurementAssemblage bob = best_response_bob(clauser_horne(), rho, {2, 2}, alice);
    Correlation p = born_correlation(rho, alice, bob);
    const double ch = bell_value(clauser_horne(), p);
    const MeasurementAssemblage& steered_by = bob_side ? bob : alice;
    Assemblage a;
    if (bob_side) {
      // Steering from Bob to Alice: swap the subsystems first.
      const ComplexMatrix swapped = swap_subsystems(rho, {2, 2});
      a = assemblage_from_state(swapped, bob, 2);
      p = p.swapped();
    } else {
      a = assemblage_from_state(rho, alice, 2);
    }
    const double ir = guarded([&] { return incompatibility_robustness(steered_by).value; });
    const double src = guarded([&] { return consistent_steering_robustness(a).value; });
    const double sr = guarded([&] { return steering_robustness(a).value; });
    const double src_di = guarded([&] { return bound_value(sr_di_consistent(p, level)); });
    const double sr_di_v = guarded([&] { return bound_value(sr_di(p, level)); });
    const double nrc = guarded([&] { return bound_value(nonlocal_robustness(p, level, true)); });
    return std::vector<std::string>{fmt(th), fmt(ch), fmt(ir), fmt(src), fmt(sr),
                                    fmt(src_di), fmt(sr_di_v), fmt(nrc)};
  });
  return t;
}

Table fig4(const FigureOptions& o) {
  const int level = o.level.value_or(1);
  Table t;
  t.header = {"scenario", "v", "bell", "er_exact", "er_di_mblhg", "sr_di", "nr"};
  const std::vector<Family> fams = {chsh_family(), seesaw_family("3322", i3322(), 2, o),
                                    seesaw_family("4322", elegant(), 2, o)};
  const std::vector<double> vs = linspace(0.7, 1.0, o.grid);
  fill_rows(t, fams.size() * vs.size(), o.threads, [&](std::size_t i) {
    const Family& fam = fams[i / vs.size()];
    std::vector<std::string> r = isotropic_row(fam, 2, vs[i % vs.size()], level);
    r.insert(r.begin(), fam.label);
    return r;
  });
  return t;
}

Table fig5(const FigureOptions& o) {
  const int level = o.level.value_or(1);
  Table t;
  t.header = {"violation", "er_di_bell", "er_isotropic"};
  // The isotropic reference: I3322 is affine in v for fixed settings.
  const Family fam = seesaw_family("3322", i3322(), 2, o);
  const double top = bell_value(i3322(), born_correlation(isotropic_state(2, 1.0), fam.alice, fam.bob));
  const double bottom = bell_value(i3322(), born_correlation(isotropic_state(2, 0.0), fam.alice, fam.bob));
  const std::vector<double> ts = linspace(0.0, top, o.grid);
  fill_rows(t, ts.size(), o.threads, [&](std::size_t i) {
    const double v = std::max(0.0, (ts[i] - bottom) / (top - bottom));
    const double er = guarded([&] { return bound_value(er_di_bell(i3322(), ts[i], level)); });
    return std::vector<std::string>{fmt(ts[i]), fmt(er), fmt(er_isotropic_analytic(2, v))};
  });
  return t;
}

}  // namespace

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }
}

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range("no column '" + name + "'");
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig1", "fig2", "fig3a", "fig3b", "fig4", "fig5"};
  return names;
}

Table make_figure(const std::string& name, const FigureOptions& opts) {
  if (opts.grid < 1) throw std::invalid_argument("grid must be positive");
  if (name == "fig1") return fig1(opts);
  if (name == "fig2") return fig2(opts);
  if (name == "fig3a") return fig3(opts, false);
  if (name == "fig3b") return fig3(opts, true);
  if (name == "fig4") return fig4(opts);
  if (name == "fig5") return fig5(opts);
  throw std::invalid_argument("unknown figure '" + name + "'");
}

}  // namespace ammkit::cli
