#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dpp {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump(const nlohmann::json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + nlohmann::json(it.key()).dump() + ": ";
        dump(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump(v, out, indent, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

nlohmann::json to_json(const PropertyReport& r) {
  return {{"name", r.name},
          {"pass", r.pass},
          {"value", r.value},
          {"tolerance", r.tolerance},
          {"details", r.details}};
}

std::string dump_json(const nlohmann::json& j, int indent) {
  std::string out;
  dump(j, out, indent, 0);
  out += "\n";
  return out;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ",";
    out += header[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv_table: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string vtk_snapshot(const StructuredGrid& g, const StateSnapshot& s) {
  const int nx = g.nx();
  const int ny = g.dimension() == 2 ? g.ny() : 1;
  std::string out;
  out += "# vtk DataFile Version 3.0\n";
  out += "dpp snapshot t=" + format_double(s.t) + "\n";
  out += "ASCII\nDATASET STRUCTURED_POINTS\n";
  out += "DIMENSIONS " + std::to_string(nx + 1) + " " + std::to_string(ny + 1) +
         " 1\n";
  out += "ORIGIN 0 0 0\n";
  out += "SPACING " + format_double(g.hx()) + " " +
         format_double(g.dimension() == 2 ? g.hy() : 1.0) + " 1\n";
  out += "CELL_DATA " + std::to_string(g.num_cells()) + "\n";

  auto scalars = [&](const char* name, const CellField& f) {
    out += std::string("SCALARS ") + name + " double 1\nLOOKUP_TABLE default\n";
    for (double v : f) out += format_double(v) + "\n";
  };
  auto vectors = [&](const char* name, const FaceField& u) {
    out += std::string("VECTORS ") + name + " double\n";
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const double ux = 0.5 * (u.x[g.face_x_index(i, j)] +
                                 u.x[g.face_x_index(i + 1, j)]);
        double uy = 0.0;
        if (g.dimension() == 2)
          uy = 0.5 *
               (u.y[g.face_y_index(i, j)] + u.y[g.face_y_index(i, j + 1)]);
        out += format_double(ux) + " " + format_double(uy) + " 0\n";
      }
  };
  scalars("p1", s.p1);
  scalars("p2", s.p2);
  vectors("u1", s.u1);
  vectors("u2", s.u2);
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace dpp
