// One PASS/FAIL line per acceptance criterion; INFO lines carry the
// diagnostic runs that sit next to a literal criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ammkit/amm.hpp"
#include "ammkit/bell.hpp"
#include "ammkit/entanglement.hpp"
#include "ammkit/incompat.hpp"
#include "ammkit/npa.hpp"
#include "ammkit/steering.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace ammkit;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& what, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %d: %s [%s] (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, what.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

void info(int id, const std::string& what, const std::function<Outcome()>& check) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("INFO %d: %s: %s [%s] (%.1f s)\n", id, what.c_str(), o.pass ? "holds" : "does not hold",
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

// Collects |value - target| <= tol checks and prints each point.
class Points {
 public:
  void add(const std::string& label, double value, double target, double tol) {
    const bool ok = std::isfinite(value) && std::abs(value - target) <= tol;
    all_ &= ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s: %.6f vs %.6f", text_.empty() ? "" : "; ", label.c_str(), value,
                  target);
    text_ += buf;
    if (!ok) text_ += " (off)";
  }
  void note(const std::string& s) { text_ += (text_.empty() ? "" : "; ") + s; }
  Outcome outcome() const { return {all_, text_}; }
  bool ok() const { return all_; }

 private:
  bool all_ = true;
  std::string text_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Correlation chsh_isotropic(double v) {
  return born_correlation(isotropic_state(2, v), chsh_alice_settings(), chsh_bob_settings());
}

MeasurementAssemblage alice_xz() { return qubit_measurements({{1, 0, 0}, {0, 0, 1}}); }

Correlation ch_optimal(double theta) {
  const ComplexMatrix rho = pure_partially_entangled(theta);
  return born_correlation(rho, alice_xz(), best_response_bob(clauser_horne(), rho, {2, 2}, alice_xz()));
}

double value(const DiBound& b) { return b.infeasible() ? std::nan("") : b.value; }

double er_fit(double v) { return (kSqrt2 * v - 1.0) / (kSqrt2 - 1.0); }

Outcome mblhg_curve(int level) {
  Points p;
  for (double v : {0.75, 0.85, 0.95, 1.0})
    p.add("v=" + fmt("%.2f", v), value(er_di_mblhg(chsh_isotropic(v), level)), er_fit(v), 1e-3);
  return p.outcome();
}

}  // namespace

int main() {
  report(1, "er_ppt on 2x2 isotropic states vs max{0,(3v-1)/2}, 21 points, < 5 s", [] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double v = i / 20.0;
      worst = std::max(worst, std::abs(er_ppt(isotropic_state(2, v), {2, 2}) - oracle::er_isotropic(2, v)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return Outcome{worst <= 1e-6 && secs < 5.0,
                   "max deviation " + fmt("%.2e", worst) + ", " + fmt("%.2f s", secs)};
  });

  report(2, "er_di_mblhg at local level 1 vs (sqrt2 v-1)/(sqrt2-1) on CHSH isotropic data, < 30 s", [] {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = mblhg_curve(1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.pass = o.pass && secs < 30.0;
    return o;
  });
  info(2, "same fit at local level 3", [] { return mblhg_curve(3); });

  report(3, "er_di_bell: CHSH (t-2)/(2sqrt2-2) and elegant (t-6)/(4sqrt3-6), 5 points each, 1e-4", [] {
    Points chsh_pts;
    for (double t : {2.1, 2.3, 2.5, 2.7, 2.0 * kSqrt2})
      chsh_pts.add("CHSH l=3 t=" + fmt("%.4f", t), value(er_di_bell(chsh(), t, 3)), oracle::er_chsh_linear(t),
                   1e-4);
    Points eleg;
    for (double t : {6.1, 6.3, 6.5, 6.7, 4.0 * kSqrt3})
      eleg.add("elegant l=1 t=" + fmt("%.4f", t), value(er_di_bell(elegant(), t, 1)),
               oracle::er_elegant_linear(t), 1e-4);
    Outcome o = chsh_pts.outcome();
    const Outcome e = eleg.outcome();
    return Outcome{o.pass && e.pass, o.detail + "; " + e.detail};
  });

  report(4, "sr_di at l=2 on CHSH isotropic data: (sqrt2 v-1)(sqrt2-1) at 0.75, 0.85; 2v-sqrt3 at 0.95, 1", [] {
    Points p;
    for (double v : {0.75, 0.85})
      p.add("v=" + fmt("%.2f", v), value(sr_di(chsh_isotropic(v), 2)), oracle::nr_chsh_isotropic(v), 2e-3);
    for (double v : {0.95, 1.0})
      p.add("v=" + fmt("%.2f", v), value(sr_di(chsh_isotropic(v), 2)), 2.0 * v - kSqrt3, 2e-3);
    return p.outcome();
  });
  info(4, "2v-sqrt3 on elegant-optimal isotropic data at AMM level 3", [] {
    const SeesawResult s = seesaw_optimize(elegant(), maximally_entangled(2), {2, 2});
    Points p;
    for (double v : {0.95, 1.0}) {
      const Correlation c = born_correlation(isotropic_state(2, v), s.alice, s.bob);
      p.add("v=" + fmt("%.2f", v), value(sr_di(c, 3)), 2.0 * v - kSqrt3, 2e-3);
    }
    return p.outcome();
  });

  double ir_xz = std::nan("");
  report(5, "IR >= SR^c >= SR^c_DI >= SR_DI (l=2) at theta = pi/16, pi/8, pi/4; SR^c_DI(pi/4) = sqrt2-1", [&] {
    const MeasurementAssemblage alice = alice_xz();
    ir_xz = incompatibility_robustness(alice).value;
    bool chain = true;
    double worst = 0.0;
    std::string text;
    double src_di_top = std::nan("");
    for (double th : {std::numbers::pi / 16, std::numbers::pi / 8, std::numbers::pi / 4}) {
      const Correlation p = ch_optimal(th);
      const double src = consistent_steering_robustness(
                             assemblage_from_state(pure_partially_entangled(th), alice, 2))
                             .value;
      const double src_di = value(sr_di_consistent(p, 2));
      const double s_di = value(sr_di(p, 2));
      const double slack = std::min({ir_xz - src, src - src_di, src_di - s_di});
      worst = std::min(worst, slack);
      chain &= std::isfinite(slack) && slack >= -1e-6;
      text += "theta=" + fmt("%.4f", th) + ": " + fmt("%.6f", ir_xz) + " >= " + fmt("%.6f", src) + " >= " +
              fmt("%.6f", src_di) + " >= " + fmt("%.6f", s_di) + "; ";
      src_di_top = src_di;
    }
    const bool tight = std::abs(src_di_top - (kSqrt2 - 1.0)) <= 1e-4;
    text += "chain worst slack " + fmt("%.2e", worst) + "; SR^c_DI(pi/4) " + fmt("%.6f", src_di_top) +
            " vs sqrt2-1 = " + fmt("%.6f", kSqrt2 - 1.0) + (tight ? "" : " (off)");
    return Outcome{chain && tight, text};
  });
  info(5, "SR^c_DI(pi/4) equals the computed IR(sigma_x, sigma_z) within 1e-4", [&] {
    const double src_di = value(sr_di_consistent(ch_optimal(std::numbers::pi / 4), 2));
    return Outcome{std::abs(src_di - ir_xz) <= 1e-4,
                   fmt("%.6f", src_di) + " vs " + fmt("%.6f", ir_xz) + " (= 3-2sqrt2)"};
  });

  report(6, "consistent SW_DI at l=2 >= 0.999 on CH-optimal pure-state data, theta >= 1.5 deg", [] {
    bool ok = true;
    std::string text;
    for (double deg : {1.5, 3.0, 10.0, 30.0, 45.0}) {
      const double w = value(sw_di(ch_optimal(deg * std::numbers::pi / 180.0), 2, true));
      ok &= std::isfinite(w) && w >= 0.999;
      text += fmt("%.1f deg: ", deg) + fmt("%.7f", w) + "; ";
    }
    text.resize(text.size() - 2);
    return Outcome{ok, text};
  });

  report(7, "PR-box assemblage: tripartite AMM feasible at l=1,2; marginal rejected by q_membership l=1", [] {
    const TripartiteAssemblage pr = pr_box_assemblage(0.5 * identity(2));
    const MeasurementAssemblage charlie = qubit_measurements({{0, 0, 1}, {1, 0, 0}});
    const TripartiteFeasibility f1 = tripartite_amm_feasible(pr, charlie, 1);
    const TripartiteFeasibility f2 = tripartite_amm_feasible(pr, charlie, 2);
    const Correlation marginal = marginal_correlation(pr);
    const NpaMembership q = q_membership(marginal, 1);
    const double c = max_chsh_value(marginal);
    const bool ok = f1.feasible && f2.feasible && !q.feasible && std::abs(c - 4.0) < 1e-12;
    return Outcome{ok, "l=1 margin " + fmt("%.2e", f1.margin) + ", l=2 margin " + fmt("%.2e", f2.margin) +
                           ", q_membership margin " + fmt("%.4f", q.margin) + ", CHSH " + fmt("%.3f", c)};
  });

  report(8, "property suites", [] {
    const std::vector<oracle::SuiteReport> suites = {
        oracle::level_monotonicity(20, 1),
        oracle::soundness_sandwich(50, 2),
        oracle::lhs_equivalence(50, 3),
        oracle::ir_equals_src(20, 4),
        oracle::solver_suite(1e-7, 1e-6),
        oracle::qutrit_curve(9),
        oracle::i3322_curve(9),
    };
    bool ok = true;
    std::string text;
    for (const oracle::SuiteReport& s : suites) {
      ok &= s.ok();
      text += s.name + ": " + std::to_string(s.instances - s.failures) + "/" + std::to_string(s.instances);
      if (!s.notes.empty()) text += " (" + s.notes.front() + ")";
      text += "; ";
    }
    text.resize(text.size() - 2);
    return Outcome{ok, text};
  });

  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
