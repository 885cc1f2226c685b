#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

#include "ammkit/amm.hpp"
#include "ammkit/entanglement.hpp"
#include "ammkit/incompat.hpp"
#include "ammkit/npa.hpp"
#include "ammkit/steering.hpp"

namespace ammkit::cli {

namespace {

Json diagnostics_json(const SolveDiagnostics& d) {
  return {{"status", to_string(d.status)},
          {"gap", d.gap},
          {"primal_residual", d.primal_residual},
          {"dual_residual", d.dual_residual},
          {"iterations", d.iterations}};
}

// What each quantity bounds, for the report.
const std::map<std::string, std::vector<std::string>>& chain_context() {
  static const std::map<std::string, std::vector<std::string>> ctx = {
      {"sr", {"lower-bounds SR^c", "lower-bounds IR of the steering party's measurements",
              "lower-bounds ER of the shared state"}},
      {"src", {"upper-bounds SR", "lower-bounds IR of the steering party's measurements",
               "equals IR of the steering-equivalent observables"}},
      {"sw", {"lower-bounds IW of the steering party's measurements"}},
      {"ir", {"upper-bounds SR^c of every assemblage these measurements produce"}},
      {"iw", {"upper-bounds SW of every assemblage these measurements produce"}},
      {"er", {"PPT relaxation: lower-bounds ER, exact for 2x2 and 2x3"}},
      {"nr", {"lower-bounds NR", "lower-bounds SR, ER"}},
      {"nrc", {"lower-bounds NR^c", "lower-bounds SR^c, IR"}},
      {"sr-di", {"lower-bounds SR, SR^c, IR, ER"}},
      {"src-di", {"lower-bounds SR^c, IR", "upper-bounds sr-di at the same level"}},
      {"sw-di", {"lower-bounds SW", "with --consistent: lower-bounds IW"}},
      {"er-di", {"lower-bounds ER"}},
      {"q-member", {"infeasible certifies P has no quantum realization"}},
  };
  return ctx;
}

Report base_report(const std::string& kind) {
  Report r;
  r.body["kind"] = kind;
  r.body["bounds"] = chain_context().at(kind);
  return r;
}

void require_version(const Json& in) {
  if (!in.is_object()) throw SchemaError("input: expected a JSON object");
  if (in.contains("version") && in["version"] != kInputVersion)
    throw SchemaError("input: unsupported version " + in["version"].dump());
}

const Json& section(const Json& in, const char* key) {
  if (!in.contains(key)) throw SchemaError(std::string("input: missing '") + key + "'");
  return in[key];
}

Assemblage read_assemblage(const Json& in) {
  if (in.contains("assemblage")) return assemblage_from_json(in["assemblage"]);
  BipartiteDims dims{};
  const ComplexMatrix rho = state_from_json(section(in, "state"), dims);
  const MeasurementAssemblage alice = measurements_from_json(section(in, "alice"));
  if (alice.dim() != dims.a) throw SchemaError("input: alice measurements do not match dims");
  return assemblage_from_state(rho, alice, dims.b);
}

Correlation read_correlation(const Json& in) {
  if (in.contains("correlation")) return correlation_from_json(in["correlation"]);
  BipartiteDims dims{};
  const ComplexMatrix rho = state_from_json(section(in, "state"), dims);
  const MeasurementAssemblage alice = measurements_from_json(section(in, "alice"));
  const MeasurementAssemblage bob = measurements_from_json(section(in, "bob"));
  if (alice.dim() != dims.a || bob.dim() != dims.b)
    throw SchemaError("input: measurements do not match dims");
  return born_correlation(rho, alice, bob);
}

void fill_bound(Report& r, const DiBound& b) {
  r.body["level"] = b.level;
  r.body["status"] = to_string(b.status);
  r.body["diagnostics"] = diagnostics_json(b.diagnostics);
  if (b.infeasible()) {
    r.body["value"] = nullptr;
    r.exit_code = kExitInfeasible;
  } else {
    r.body["value"] = b.value;
  }
}

void fill_plain(Report& r, double value, const SolveDiagnostics& d) {
  r.body["value"] = value;
  r.body["status"] = "solved";
  r.body["level"] = nullptr;
  r.body["diagnostics"] = diagnostics_json(d);
}

}  // namespace

const std::vector<std::string>& quantify_kinds() {
  static const std::vector<std::string> kinds = {"sr", "src", "sw", "ir", "iw",
                                                 "er", "nr", "nrc", "sr-di", "src-di",
                                                 "sw-di", "er-di", "q-member"};
  return kinds;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("'" + path + "': " + e.what());
  }
}

Report quantify(const std::string& kind, const Json& in, const QuantifyOptions& opts) {
  if (!chain_context().contains(kind)) throw SchemaError("unknown kind '" + kind + "'");
  require_version(in);
  Report r = base_report(kind);
  const int level = opts.level;
  if (kind == "sr" || kind == "src" || kind == "sw") {
    const Assemblage a = read_assemblage(in);
    const SteeringResult s = kind == "sr"    ? steering_robustness(a)
                             : kind == "src" ? consistent_steering_robustness(a)
                                             : steerable_weight(a);
    fill_plain(r, s.value, s.diagnostics);
  } else if (kind == "ir" || kind == "iw") {
    const MeasurementAssemblage m = measurements_from_json(section(in, "measurements"));
    const IncompatResult res =
        kind == "ir" ? incompatibility_robustness(m) : incompatibility_weight(m);
    fill_plain(r, res.value, res.diagnostics);
  } else if (kind == "er") {
    BipartiteDims dims{};
    const ComplexMatrix rho = state_from_json(section(in, "state"), dims);
    const EntanglementResult e = er_ppt_result(rho, dims);
    fill_plain(r, e.value, e.diagnostics);
  } else if (kind == "nr" || kind == "nrc") {
    fill_bound(r, nonlocal_robustness(read_correlation(in), level, kind == "nrc"));
  } else if (kind == "sr-di") {
    fill_bound(r, sr_di(read_correlation(in), level));
  } else if (kind == "src-di") {
    fill_bound(r, sr_di_consistent(read_correlation(in), level));
  } else if (kind == "sw-di") {
    fill_bound(r, sw_di(read_correlation(in), level, opts.consistent));
  } else if (kind == "er-di") {
    if (in.contains("bell")) {
      const BellFunctional f = bell_from_json(in["bell"]);
      const Json& t = section(in, "bell_value");
      if (!t.is_number()) throw SchemaError("input: 'bell_value' must be a number");
      fill_bound(r, er_di_bell(f, t.get<double>(), level));
    } else {
      fill_bound(r, er_di_mblhg(read_correlation(in), level));
    }
  } else {
    const NpaMembership m = q_membership(read_correlation(in), level, opts.tol);
    r.body["level"] = m.level;
    r.body["feasible"] = m.feasible;
    r.body["value"] = m.margin;
    r.body["status"] = m.feasible ? "feasible" : "infeasible";
    r.body["diagnostics"] = diagnostics_json(m.diagnostics);
    if (!m.feasible) r.exit_code = kExitInfeasible;
  }
  return r;
}

Report subchannel(const Json& in, int level) {
  require_version(in);
  const DiBound b = sr_di(read_correlation(in), level);
  Report r;
  r.body["kind"] = "subchannel";
  r.body["level"] = b.level;
  r.body["status"] = to_string(b.status);
  r.body["diagnostics"] = diagnostics_json(b.diagnostics);
  if (b.infeasible()) {
    r.body["advantage_lower_bound"] = nullptr;
    r.body["sr_di"] = nullptr;
    r.exit_code = kExitInfeasible;
  } else {
    r.body["sr_di"] = b.value;
    r.body["advantage_lower_bound"] = b.value + 1.0;
  }
  return r;
}

const std::vector<std::string>& input_templates() {
  static const std::vector<std::string> names = {
      "phi-plus-assemblage", "pauli-measurements", "isotropic-state", "chsh-isotropic",
      "ch-pure", "pr-box", "chsh-bell"};
  return names;
}

Json make_input(const std::string& name, double param) {
  Json out{{"version", kInputVersion}};
  const MeasurementAssemblage zx = qubit_measurements({{0, 0, 1}, {1, 0, 0}});
  if (name == "phi-plus-assemblage") {
    out["assemblage"] = assemblage_to_json(assemblage_from_state(maximally_entangled(2), zx, 2));
  } else if (name == "pauli-measurements") {
    out["measurements"] = measurements_to_json(zx);
  } else if (name == "isotropic-state") {
    out["state"] = {{"isotropic", {{"d", 2}, {"v", param}}}};
  } else if (name == "chsh-isotropic") {
    out["correlation"] = correlation_to_json(
        born_correlation(isotropic_state(2, param), chsh_alice_settings(), chsh_bob_settings()));
  } else if (name == "ch-pure") {
    const MeasurementAssemblage alice = qubit_measurements({{1, 0, 0}, {0, 0, 1}});
    const ComplexMatrix rho = pure_partially_entangled(param);
    out["correlation"] = correlation_to_json(
        born_correlation(rho, alice, best_response_bob(clauser_horne(), rho, {2, 2}, alice)));
  } else if (name == "pr-box") {
    out["correlation"] =
        correlation_to_json(marginal_correlation(pr_box_assemblage(0.5 * identity(2))));
  } else if (name == "chsh-bell") {
    out["bell"] = {{"name", "chsh"}};
    out["bell_value"] = param;
  } else {
    throw SchemaError("unknown input template '" + name + "'");
  }
  return out;
}

}  // namespace ammkit::cli
