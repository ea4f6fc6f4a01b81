#pragma once

#include <map>
#include <string>

#include "report.hpp"
#include "scenario.hpp"

namespace dpp {

inline constexpr const char* kVersion = "0.1.0";

struct RunReport {
  int exit_code = 0;  // 0 pass, 1 suite failure, 2 input error, 3 numerical
  nlohmann::json report;
  std::map<std::string, std::string> files;  // relative path -> content
};

/// Execute every requested suite and assemble the report document plus output
/// files (report.json, series/*.csv, optional fields/*.vtk). Solver failures
/// are captured as exit code 3 with the error recorded in the report.
RunReport run_scenario(const Scenario& sc);

struct ConvergenceResult {
  std::vector<double> spacings;
  std::vector<double> errors;
  double order = 0.0;
};

/// Refinement study on the scenario's manufactured case ("decay" refines time
/// only, "smooth" refines space and time proportionally). Throws
/// std::invalid_argument for fewer than 3 levels or an unset study case.
ConvergenceResult convergence_study(const Scenario& sc);

}  // namespace dpp
