#pragma once

#include <string>
#include <vector>

#include "ammkit/io.hpp"

namespace ammkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitInfeasible = 4;

inline constexpr int kInputVersion = 1;

struct QuantifyOptions {
  int level = 1;
  bool consistent = false;
  double tol = 1e-7;
};

struct Report {
  int exit_code = kExitOk;
  Json body;
};

const std::vector<std::string>& quantify_kinds();

// Reads and parses a JSON file; throws SchemaError on I/O or syntax errors.
Json load_json(const std::string& path);

// Throws SchemaError / ValidationError for bad input and SolverFailure when
// the SDP ends without an acceptable optimum.
Report quantify(const std::string& kind, const Json& input, const QuantifyOptions& opts);

// Certified lower bound sr_di + 1 on the subchannel discrimination advantage.
Report subchannel(const Json& input, int level);

const std::vector<std::string>& input_templates();

// Example input documents; `param` is v for isotropic families and theta
// for the pure-state family (ignored otherwise).
Json make_input(const std::string& name, double param);

}  // namespace ammkit::cli
