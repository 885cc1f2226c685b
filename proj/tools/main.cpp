#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ammkit/quantum.hpp"
#include "ammkit/solver.hpp"
#include "commands.hpp"
#include "figures.hpp"

using namespace ammkit;
using namespace ammkit::cli;

namespace {

int emit(const Report& r) {
  std::cout << r.body.dump(2) << '\n';
  return r.exit_code;
}

template <typename F>
int guarded_run(F&& f) {
  try {
    return f();
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitSchema;
  } catch (const Json::exception& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kExitSchema;
  } catch (const SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-matrix bounds on steering, incompatibility and entanglement"};
  app.require_subcommand(1);

  std::string fig_name, fig_out;
  FigureOptions fig_opts;
  int fig_level = 0;
  auto* fig = app.add_subcommand("figure", "Write the data of one figure as CSV");
  fig->add_option("name", fig_name, "Figure")->required()->check(CLI::IsMember(figure_names()));
  fig->add_option("--out", fig_out, "Output CSV (stdout when omitted)");
  fig->add_option("--grid", fig_opts.grid, "Number of grid points")->check(CLI::PositiveNumber);
  fig->add_option("--level", fig_level, "Local level (figure default when omitted)")
      ->check(CLI::PositiveNumber);
  fig->add_option("--seed", fig_opts.seed, "See-saw seed");
  fig->add_option("--threads", fig_opts.threads, "Worker threads (0: all cores)");

  std::string q_kind, q_input;
  QuantifyOptions q_opts;
  auto* quant = app.add_subcommand("quantify", "Evaluate one quantifier on a JSON input");
  quant->add_option("kind", q_kind, "Quantity")->required()->check(CLI::IsMember(quantify_kinds()));
  quant->add_option("--input", q_input, "Input JSON")->required();
  quant->add_option("--level", q_opts.level, "Local level of the relaxation")
      ->check(CLI::PositiveNumber);
  quant->add_flag("--consistent", q_opts.consistent, "Marginal-consistent variant (sw-di)");
  quant->add_option("--tol", q_opts.tol, "Feasibility tolerance (q-member)");

  std::string s_input;
  int s_level = 2;
  auto* sub = app.add_subcommand("subchannel",
                                 "Certified lower bound on the subchannel discrimination advantage");
  sub->add_option("--input", s_input, "Correlation JSON")->required();
  sub->add_option("--level", s_level, "Local level")->check(CLI::PositiveNumber);

  std::string m_name, m_out;
  double m_param = 1.0;
  auto* make = app.add_subcommand("make-input", "Write an example input document");
  make->add_option("template", m_name, "Template")->required()->check(CLI::IsMember(input_templates()));
  make->add_option("--param", m_param, "Visibility, angle or Bell value, by template");
  make->add_option("--out", m_out, "Output JSON (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*fig)
    return guarded_run([&] {
      if (fig_level > 0) fig_opts.level = fig_level;
      const Table t = make_figure(fig_name, fig_opts);
      if (fig_out.empty()) {
        t.write_csv(std::cout);
      } else {
        std::ofstream out(fig_out);
        if (!out) throw std::invalid_argument("cannot write '" + fig_out + "'");
        t.write_csv(out);
      }
      return kExitOk;
    });
  if (*quant)
    return guarded_run([&] { return emit(quantify(q_kind, load_json(q_input), q_opts)); });
  if (*sub) return guarded_run([&] { return emit(subchannel(load_json(s_input), s_level)); });
  return guarded_run([&] {
    const Json doc = make_input(m_name, m_param);
    if (m_out.empty()) {
      std::cout << doc.dump(2) << '\n';
    } else {
      std::ofstream out(m_out);
      if (!out) throw std::invalid_argument("cannot write '" + m_out + "'");
      out << doc.dump(2) << '\n';
    }
    return kExitOk;
  });
}
