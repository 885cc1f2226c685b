#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "ammkit/bell.hpp"
#include "ammkit/quantum.hpp"

namespace ammkit {

// Raised for any JSON document that does not follow docs/json_schema.md.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

// Matrices are nested rows of [re, im] pairs; a bare number is accepted as
// a real entry.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

// {"scenario": ..., "p": [x][y][a][b]} (or [x][y][z][a][b][c]).
Json correlation_to_json(const Correlation& p);
Correlation correlation_from_json(const Json& j);

// {"states": [x][a] matrices}.
Json assemblage_to_json(const Assemblage& a);
Assemblage assemblage_from_json(const Json& j);

// {"povms": [x][a] matrices}.
Json measurements_to_json(const MeasurementAssemblage& m);
MeasurementAssemblage measurements_from_json(const Json& j);

// {"states": [x][y][a][b] matrices}.
Json tripartite_to_json(const TripartiteAssemblage& t);
TripartiteAssemblage tripartite_from_json(const Json& j);

// {"name", "coefficients": [x][y][a][b], "local_bound", "quantum_bound"?}
// or {"name": "chsh" | "ch" | "elegant" | "i3322" | "i2233"} alone.
Json bell_to_json(const BellFunctional& f);
BellFunctional bell_from_json(const Json& j);

// {"dims": [dA, dB], "rho": matrix} or {"isotropic": {"d", "v"}} or
// {"pure_theta": t}. Returns the density matrix and fills dims.
ComplexMatrix state_from_json(const Json& j, BipartiteDims& dims);

}  // namespace ammkit
