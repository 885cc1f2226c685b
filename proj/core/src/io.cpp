#include "ammkit/io.hpp"

namespace ammkit {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw SchemaError(std::string(what) + ": expected a number");
  return v.get<double>();
}

const Json& array_of(const Json& v, std::size_t n, const char* what) {
  if (!v.is_array() || v.size() != n)
    throw SchemaError(std::string(what) + ": expected an array of length " + std::to_string(n));
  return v;
}

const Json& any_array(const Json& v, const char* what) {
  if (!v.is_array() || v.empty())
    throw SchemaError(std::string(what) + ": expected a non-empty array");
  return v;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  any_array(j, "matrix");
  const std::size_t n = j.size();
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = array_of(j[r], n, "matrix row");
    for (std::size_t c = 0; c < n; ++c) {
      const Json& e = row[c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else {
        array_of(e, 2, "matrix entry");
        m(r, c) = Complex(number(e[0], "matrix entry"), number(e[1], "matrix entry"));
      }
    }
  }
  return m;
}

Json scenario_to_json(const Scenario& s) {
  return {{"settings", s.settings}, {"outcomes", s.outcomes}};
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  try {
    s.settings = field(j, "settings").get<std::vector<int>>();
    s.outcomes = field(j, "outcomes").get<std::vector<int>>();
    s.validate();
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("scenario: ") + e.what());
  } catch (const ValidationError& e) {
    throw SchemaError(e.what());
  }
  return s;
}

Json correlation_to_json(const Correlation& p) {
  const Scenario& s = p.scenario();
  Json out;
  out["scenario"] = scenario_to_json(s);
  Json table = Json::array();
  if (s.parties() == 2) {
    for (int x = 0; x < p.nx(); ++x) {
      Json tx = Json::array();
      for (int y = 0; y < p.ny(); ++y) {
        Json txy = Json::array();
        for (int a = 0; a < p.na(); ++a) {
          Json row = Json::array();
          for (int b = 0; b < p.nb(); ++b) row.push_back(p(a, b, x, y));
          txy.push_back(std::move(row));
        }
        tx.push_back(std::move(txy));
      }
      table.push_back(std::move(tx));
    }
  } else {
    const int nz = s.settings[2], nc = s.outcomes[2];
    for (int x = 0; x < p.nx(); ++x) {
      Json tx = Json::array();
      for (int y = 0; y < p.ny(); ++y) {
        Json ty = Json::array();
        for (int z = 0; z < nz; ++z) {
          Json tz = Json::array();
          for (int a = 0; a < p.na(); ++a) {
            Json ta = Json::array();
            for (int b = 0; b < p.nb(); ++b) {
              Json tb = Json::array();
              for (int c = 0; c < nc; ++c) tb.push_back(p(a, b, c, x, y, z));
              ta.push_back(std::move(tb));
            }
            tz.push_back(std::move(ta));
          }
          ty.push_back(std::move(tz));
        }
        tx.push_back(std::move(ty));
      }
      table.push_back(std::move(tx));
    }
  }
  out["p"] = std::move(table);
  return out;
}

Correlation correlation_from_json(const Json& j) {
  const Scenario s = scenario_from_json(field(j, "scenario"));
  Correlation p(s);
  const Json& t = field(j, "p");
  if (s.parties() == 2) {
    array_of(t, s.settings[0], "p");
    for (int x = 0; x < p.nx(); ++x) {
      array_of(t[x], s.settings[1], "p[x]");
      for (int y = 0; y < p.ny(); ++y) {
        array_of(t[x][y], s.outcomes[0], "p[x][y]");
        for (int a = 0; a < p.na(); ++a) {
          array_of(t[x][y][a], s.outcomes[1], "p[x][y][a]");
          for (int b = 0; b < p.nb(); ++b) p(a, b, x, y) = number(t[x][y][a][b], "p entry");
        }
      }
    }
    return p;
  }
  const int nz = s.settings[2], nc = s.outcomes[2];
  array_of(t, s.settings[0], "p");
  for (int x = 0; x < p.nx(); ++x) {
    array_of(t[x], s.settings[1], "p[x]");
    for (int y = 0; y < p.ny(); ++y) {
      array_of(t[x][y], nz, "p[x][y]");
      for (int z = 0; z < nz; ++z) {
        array_of(t[x][y][z], s.outcomes[0], "p[x][y][z]");
        for (int a = 0; a < p.na(); ++a) {
          array_of(t[x][y][z][a], s.outcomes[1], "p[x][y][z][a]");
          for (int b = 0; b < p.nb(); ++b) {
            array_of(t[x][y][z][a][b], nc, "p[x][y][z][a][b]");
            for (int c = 0; c < nc; ++c)
              p(a, b, c, x, y, z) = number(t[x][y][z][a][b][c], "p entry");
          }
        }
      }
    }
  }
  return p;
}

namespace {

Json table_to_json(const std::vector<std::vector<ComplexMatrix>>& t) {
  Json out = Json::array();
  for (const auto& row : t) {
    Json r = Json::array();
    for (const ComplexMatrix& m : row) r.push_back(matrix_to_json(m));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<ComplexMatrix>> table_from_json(const Json& j, const char* what) {
  any_array(j, what);
  std::vector<std::vector<ComplexMatrix>> out;
  for (const Json& row : j) {
    any_array(row, what);
    std::vector<ComplexMatrix> r;
    for (const Json& m : row) r.push_back(matrix_from_json(m));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Json assemblage_to_json(const Assemblage& a) { return {{"states", table_to_json(a.states)}}; }

Assemblage assemblage_from_json(const Json& j) {
  Assemblage a;
  a.states = table_from_json(field(j, "states"), "states");
  a.validate();
  return a;
}

Json measurements_to_json(const MeasurementAssemblage& m) {
  return {{"povms", table_to_json(m.povms)}};
}

MeasurementAssemblage measurements_from_json(const Json& j) {
  MeasurementAssemblage m;
  m.povms = table_from_json(field(j, "povms"), "povms");
  m.validate();
  return m;
}

Json tripartite_to_json(const TripartiteAssemblage& t) {
  Json xs = Json::array();
  for (int x = 0; x < t.nx; ++x) {
    Json ys = Json::array();
    for (int y = 0; y < t.ny; ++y) {
      Json as = Json::array();
      for (int a = 0; a < t.na; ++a) {
        Json bs = Json::array();
        for (int b = 0; b < t.nb; ++b) bs.push_back(matrix_to_json(t.at(x, y, a, b)));
        as.push_back(std::move(bs));
      }
      ys.push_back(std::move(as));
    }
    xs.push_back(std::move(ys));
  }
  return {{"states", xs}};
}

TripartiteAssemblage tripartite_from_json(const Json& j) {
  const Json& xs = any_array(field(j, "states"), "states");
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(any_array(xs[0], "states[x]").size());
  const int na = static_cast<int>(any_array(xs[0][0], "states[x][y]").size());
  const int nb = static_cast<int>(any_array(xs[0][0][0], "states[x][y][a]").size());
  const int d = static_cast<int>(matrix_from_json(xs[0][0][0][0]).rows());
  TripartiteAssemblage t(nx, ny, na, nb, d);
  for (int x = 0; x < nx; ++x) {
    array_of(xs[x], ny, "states[x]");
    for (int y = 0; y < ny; ++y) {
      array_of(xs[x][y], na, "states[x][y]");
      for (int a = 0; a < na; ++a) {
        array_of(xs[x][y][a], nb, "states[x][y][a]");
        for (int b = 0; b < nb; ++b) {
          t.at(x, y, a, b) = matrix_from_json(xs[x][y][a][b]);
          if (t.at(x, y, a, b).rows() != d) throw SchemaError("states: mixed dimensions");
        }
      }
    }
  }
  return t;
}

Json bell_to_json(const BellFunctional& f) {
  const auto& s = f.scenario;
  Json coefs = Json::array();
  for (int x = 0; x < s.settings[0]; ++x) {
    Json tx = Json::array();
    for (int y = 0; y < s.settings[1]; ++y) {
      Json txy = Json::array();
      for (int a = 0; a < s.outcomes[0]; ++a) {
        Json row = Json::array();
        for (int b = 0; b < s.outcomes[1]; ++b) row.push_back(f.coef(x, y, a, b));
        txy.push_back(std::move(row));
      }
      tx.push_back(std::move(txy));
    }
    coefs.push_back(std::move(tx));
  }
  Json out{{"name", f.name},
           {"scenario", scenario_to_json(s)},
           {"coefficients", coefs},
           {"local_bound", f.local_bound}};
  if (f.quantum_bound) out["quantum_bound"] = *f.quantum_bound;
  return out;
}

BellFunctional bell_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("bell: expected an object");
  if (!j.contains("coefficients")) {
    const std::string name = field(j, "name").get<std::string>();
    if (name == "chsh") return chsh();
    if (name == "ch") return clauser_horne();
    if (name == "elegant") return elegant();
    if (name == "i3322") return i3322();
    if (name == "i2233") return i2233();
    throw SchemaError("bell: unknown named functional '" + name + "'");
  }
  const Json& c = any_array(field(j, "coefficients"), "coefficients");
  const int nx = static_cast<int>(c.size());
  const int ny = static_cast<int>(any_array(c[0], "coefficients[x]").size());
  const int na = static_cast<int>(any_array(c[0][0], "coefficients[x][y]").size());
  const int nb = static_cast<int>(any_array(c[0][0][0], "coefficients[x][y][a]").size());
  BellFunctional f(j.value("name", std::string("custom")), Scenario::bipartite(nx, ny, na, nb));
  for (int x = 0; x < nx; ++x) {
    array_of(c[x], ny, "coefficients[x]");
    for (int y = 0; y < ny; ++y) {
      array_of(c[x][y], na, "coefficients[x][y]");
      for (int a = 0; a < na; ++a) {
        array_of(c[x][y][a], nb, "coefficients[x][y][a]");
        for (int b = 0; b < nb; ++b) f.coef(x, y, a, b) = number(c[x][y][a][b], "coefficient");
      }
    }
  }
  f.local_bound = j.contains("local_bound") ? number(j["local_bound"], "local_bound")
                                            : compute_local_bound(f);
  if (j.contains("quantum_bound")) f.quantum_bound = number(j["quantum_bound"], "quantum_bound");
  return f;
}

ComplexMatrix state_from_json(const Json& j, BipartiteDims& dims) {
  if (!j.is_object()) throw SchemaError("state: expected an object");
  try {
    if (j.contains("isotropic")) {
      const Json& iso = j["isotropic"];
      const int d = int_field(iso, "d");
      dims = {d, d};
      return isotropic_state(d, number(field(iso, "v"), "v"));
    }
    if (j.contains("pure_theta")) {
      dims = {2, 2};
      return pure_partially_entangled(number(j["pure_theta"], "pure_theta"));
    }
  } catch (const ValidationError& e) {
    throw SchemaError(e.what());
  }
  const auto d = field(j, "dims").get<std::vector<int>>();
  if (d.size() != 2) throw SchemaError("state: dims must have two entries");
  dims = {d[0], d[1]};
  ComplexMatrix rho = matrix_from_json(field(j, "rho"));
  if (rho.rows() != d[0] * d[1]) throw SchemaError("state: rho does not match dims");
  return rho;
}

}  // namespace ammkit
