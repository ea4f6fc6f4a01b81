#include "scenario.hpp"

#include <algorithm>
#include <set>

#include "manufactured.hpp"

namespace dpp {

namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

struct Parser {
  std::vector<std::string> errors;

  void fail(const std::string& msg) { errors.push_back(msg); }

  void check_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) {
      fail("expected an object at " + path);
      return;
    }
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!allowed.count(it.key()))
        fail("unknown key '" + it.key() + "' at " + path);
  }

  bool has(const json& obj, const char* key) {
    return obj.is_object() && obj.contains(key);
  }

  double number(const json& obj, const char* key, const std::string& path,
                double fallback, bool required = false) {
    if (!has(obj, key)) {
      if (required) fail("missing key '" + std::string(key) + "' at " + path);
      return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
      fail("expected a number for '" + std::string(key) + "' at " + path);
      return fallback;
    }
    return v.get<double>();
  }

  long integer(const json& obj, const char* key, const std::string& path,
               long fallback, bool required = false) {
    if (!has(obj, key)) {
      if (required) fail("missing key '" + std::string(key) + "' at " + path);
      return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail("expected an integer for '" + std::string(key) + "' at " + path);
      return fallback;
    }
    return v.get<long>();
  }

  std::string text(const json& obj, const char* key, const std::string& path,
                   const std::string& fallback, bool required = false) {
    if (!has(obj, key)) {
      if (required) fail("missing key '" + std::string(key) + "' at " + path);
      return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) {
      fail("expected a string for '" + std::string(key) + "' at " + path);
      return fallback;
    }
    return v.get<std::string>();
  }

  // scalar broadcast or per-cell array
  CellField cell_field(const json& obj, const char* key, const std::string& path,
                       const StructuredGrid& g, double fallback) {
    if (!has(obj, key)) {
      fail("missing key '" + std::string(key) + "' at " + path);
      return g.make_cell_field(fallback);
    }
    const json& v = obj.at(key);
    if (v.is_number()) return g.make_cell_field(v.get<double>());
    if (v.is_array()) {
      if (v.size() != g.num_cells()) {
        fail("array for '" + std::string(key) + "' at " + path + " must have " +
             std::to_string(g.num_cells()) + " entries");
        return g.make_cell_field(fallback);
      }
      CellField f = g.make_cell_field(fallback);
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (!v[i].is_number()) {
          fail("non-numeric entry in '" + std::string(key) + "' at " + path);
          return g.make_cell_field(fallback);
        }
        f[i] = v[i].get<double>();
      }
      return f;
    }
    fail("expected a number or array for '" + std::string(key) + "' at " + path);
    return g.make_cell_field(fallback);
  }
};

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> errors)
    : std::runtime_error(join(errors)), errors_(std::move(errors)) {}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::Uniqueness: return "uniqueness";
    case Suite::Reciprocity: return "reciprocity";
    case Suite::Variational: return "variational";
    case Suite::Convergence: return "convergence";
  }
  return "?";
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError({std::string("malformed JSON: ") + e.what()});
  }

  Parser p;
  Scenario sc;
  p.check_keys(doc, "/",
               {"name", "grid", "material", "time", "bc", "loads", "suites",
                "seed", "study", "tolerances", "output", "pin"});
  if (!doc.is_object()) throw ScenarioError(std::move(p.errors));

  sc.name = p.text(doc, "name", "/", "scenario");

  // grid
  StructuredGrid grid = StructuredGrid::make(1, {1.0}, {1});
  if (p.has(doc, "grid")) {
    const json& g = doc.at("grid");
    p.check_keys(g, "/grid", {"extents", "cells"});
    std::vector<double> extents;
    std::vector<int> cells;
    if (p.has(g, "extents") && g.at("extents").is_array())
      for (const auto& v : g.at("extents")) {
        if (v.is_number()) extents.push_back(v.get<double>());
      }
    else
      p.fail("missing or non-array 'extents' at /grid");
    if (p.has(g, "cells") && g.at("cells").is_array())
      for (const auto& v : g.at("cells")) {
        if (v.is_number_integer()) cells.push_back(v.get<int>());
      }
    else
      p.fail("missing or non-array 'cells' at /grid");
    if (extents.size() != cells.size() || extents.empty() || extents.size() > 2)
      p.fail("'extents' and 'cells' at /grid must both have 1 or 2 entries");
    else {
      try {
        grid = StructuredGrid::make(static_cast<int>(cells.size()), extents, cells);
      } catch (const std::invalid_argument& e) {
        p.fail(std::string("/grid: ") + e.what());
      }
    }
  } else {
    p.fail("missing key 'grid' at /");
  }
  sc.problem.grid = grid;

  // material
  Material mat = uniform_material(grid, 1.0, 1.0, 0.0, 0.5, 0.5, 1.0, 1.0);
  if (p.has(doc, "material")) {
    const json& m = doc.at("material");
    p.check_keys(m, "/material",
                 {"gamma", "mu", "beta", "phi1", "phi2", "k1", "k2"});
    mat.gamma = p.number(m, "gamma", "/material", 1.0, true);
    mat.mu = p.number(m, "mu", "/material", 1.0, true);
    mat.beta = p.number(m, "beta", "/material", 0.0, true);
    mat.phi1 = p.cell_field(m, "phi1", "/material", grid, 0.5);
    mat.phi2 = p.cell_field(m, "phi2", "/material", grid, 0.5);
    mat.k1.xx = p.cell_field(m, "k1", "/material", grid, 1.0);
    mat.k1.yy = mat.k1.xx;
    mat.k2.xx = p.cell_field(m, "k2", "/material", grid, 1.0);
    mat.k2.yy = mat.k2.xx;
  } else {
    p.fail("missing key 'material' at /");
  }
  sc.problem.material = mat;

  // time
  double T = 1.0;
  long steps = 16;
  if (p.has(doc, "time")) {
    const json& t = doc.at("time");
    p.check_keys(t, "/time", {"T", "steps", "scheme"});
    T = p.number(t, "T", "/time", 1.0, true);
    steps = p.integer(t, "steps", "/time", 16, true);
    const std::string scheme = p.text(t, "scheme", "/time", "crank-nicolson");
    if (scheme == "crank-nicolson")
      sc.scheme = Scheme::CrankNicolson;
    else if (scheme == "backward-euler")
      sc.scheme = Scheme::BackwardEuler;
    else
      p.fail("unknown scheme '" + scheme + "' at /time");
  } else {
    p.fail("missing key 'time' at /");
  }
  sc.problem.T = T;
  sc.problem.steps = static_cast<int>(steps);
  const double dt = steps >= 1 ? T / static_cast<double>(steps) : 1.0;

  // boundary conditions: one kind and uniform value per network
  auto parse_bc = [&](const char* key) {
    NetworkBC bc = uniform_bc(grid, static_cast<int>(std::max(steps, 1L)), dt,
                              BcKind::Pressure, 0.0);
    const std::string path = std::string("/bc/") + key;
    if (!p.has(doc.at("bc"), key)) {
      p.fail("missing key '" + std::string(key) + "' at /bc");
      return bc;
    }
    const json& b = doc.at("bc").at(key);
    p.check_keys(b, path, {"kind", "value"});
    const std::string kind = p.text(b, "kind", path, "pressure", true);
    const double value = p.number(b, "value", path, 0.0);
    BcKind k = BcKind::Pressure;
    if (kind == "velocity")
      k = BcKind::Velocity;
    else if (kind != "pressure")
      p.fail("unknown kind '" + kind + "' at " + path);
    return uniform_bc(grid, static_cast<int>(std::max(steps, 1L)), dt, k, value);
  };
  if (p.has(doc, "bc")) {
    p.check_keys(doc.at("bc"), "/bc", {"network1", "network2"});
    sc.problem.bc1 = parse_bc("network1");
    sc.problem.bc2 = parse_bc("network2");
  } else {
    p.fail("missing key 'bc' at /");
  }

  // loads: uniform initial velocities and constant body forces
  sc.problem.loads = zero_loads(grid, static_cast<int>(std::max(steps, 1L)), dt);
  if (p.has(doc, "loads")) {
    const json& l = doc.at("loads");
    p.check_keys(l, "/loads", {"u01", "u02", "b1", "b2"});
    const double u01 = p.number(l, "u01", "/loads", 0.0);
    const double u02 = p.number(l, "u02", "/loads", 0.0);
    const double b1 = p.number(l, "b1", "/loads", 0.0);
    const double b2 = p.number(l, "b2", "/loads", 0.0);
    sc.problem.loads.u01 = grid.make_face_field(u01);
    sc.problem.loads.u02 = grid.make_face_field(u02);
    sc.problem.loads.b1 = constant_series(dt, static_cast<std::size_t>(steps),
                                          b1, grid.num_faces());
    sc.problem.loads.b2 = constant_series(dt, static_cast<std::size_t>(steps),
                                          b2, grid.num_faces());
  }

  if (p.has(doc, "pin")) {
    const std::string pin = p.text(doc, "pin", "/", "zero-mean");
    if (pin == "zero-mean")
      sc.problem.pin = PressurePin::ZeroMean;
    else if (pin == "none")
      sc.problem.pin = PressurePin::None;
    else
      p.fail("unknown pin '" + pin + "' at /");
  }

  if (p.has(doc, "suites")) {
    const json& s = doc.at("suites");
    if (!s.is_array())
      p.fail("expected an array for 'suites' at /");
    else
      for (const auto& v : s) {
        const std::string name = v.is_string() ? v.get<std::string>() : "";
        if (name == "uniqueness")
          sc.suites.push_back(Suite::Uniqueness);
        else if (name == "reciprocity")
          sc.suites.push_back(Suite::Reciprocity);
        else if (name == "variational")
          sc.suites.push_back(Suite::Variational);
        else if (name == "convergence")
          sc.suites.push_back(Suite::Convergence);
        else
          p.fail("unknown suite '" + name + "' at /suites");
      }
  }

  if (p.has(doc, "seed")) {
    const json& s = doc.at("seed");
    if (s.is_number_unsigned() || s.is_number_integer())
      sc.seed = s.get<std::uint64_t>();
    else
      p.fail("expected an integer for 'seed' at /");
  }

  if (p.has(doc, "study")) {
    const json& s = doc.at("study");
    p.check_keys(s, "/study", {"case", "levels"});
    sc.study_case = p.text(s, "case", "/study", "", true);
    if (!sc.study_case.empty() && sc.study_case != "decay" &&
        sc.study_case != "smooth")
      p.fail("unknown study case '" + sc.study_case + "' at /study");
    sc.levels = static_cast<int>(p.integer(s, "levels", "/study", sc.levels));
  }

  if (p.has(doc, "tolerances")) {
    const json& t = doc.at("tolerances");
    p.check_keys(t, "/tolerances", {"uniqueness", "reciprocity", "variational"});
    sc.tol_uniqueness = p.number(t, "uniqueness", "/tolerances", sc.tol_uniqueness);
    sc.tol_reciprocity =
        p.number(t, "reciprocity", "/tolerances", sc.tol_reciprocity);
    sc.tol_variational =
        p.number(t, "variational", "/tolerances", sc.tol_variational);
  }

  if (p.has(doc, "output")) {
    const json& o = doc.at("output");
    p.check_keys(o, "/output", {"fields", "times"});
    if (p.has(o, "fields")) {
      if (o.at("fields").is_boolean())
        sc.write_fields = o.at("fields").get<bool>();
      else
        p.fail("expected a boolean for 'fields' at /output");
    }
    if (p.has(o, "times") && o.at("times").is_array())
      for (const auto& v : o.at("times"))
        if (v.is_number()) sc.field_times.push_back(v.get<double>());
  }

  // physical invariants surface with the same wording as validate()
  if (p.errors.empty())
    for (const auto& msg : validate(sc.problem)) p.fail(msg);

  if (!p.errors.empty()) throw ScenarioError(std::move(p.errors));
  sc.echo = doc;
  return sc;
}

}  // namespace dpp
