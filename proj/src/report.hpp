#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "grid.hpp"
#include "state.hpp"

namespace dpp {

/// Outcome of one verification check.
struct PropertyReport {
  std::string name;
  bool pass = false;
  double value = 0.0;      // headline metric
  double tolerance = 0.0;  // bound the metric was held to
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json to_json(const PropertyReport& r);

/// JSON text with every floating-point number printed via "%.17g" so that
/// identical values serialize to identical bytes.
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// Comma-separated table with a header row and LF line endings.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

/// Legacy ASCII VTK STRUCTURED_POINTS snapshot: cell pressures plus
/// face-averaged cell velocities for both networks.
std::string vtk_snapshot(const StructuredGrid& g, const StateSnapshot& s);

/// Creates parent directories as needed.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dpp
