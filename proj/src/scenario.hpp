#pragma once

#include <cstdint>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "solver.hpp"

namespace dpp {

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

enum class Suite { Uniqueness, Reciprocity, Variational, Convergence };

std::string suite_name(Suite s);

struct Scenario {
  std::string name;
  DppProblem problem;
  Scheme scheme = Scheme::CrankNicolson;
  std::vector<Suite> suites;
  std::uint64_t seed = 0;
  int levels = 3;                 // refinement levels for studies
  std::string study_case;         // "decay" or "smooth" (convergence suite)
  double tol_uniqueness = 10.0;  // c in the margin bound c*(dt^p + h^2)*scale(E)
  double tol_reciprocity = 1e-3;
  double tol_variational = 1e-3;
  bool write_fields = false;
  std::vector<double> field_times;
  nlohmann::json echo;  // normalized scenario document
};

/// Strict parse of the documented JSON schema: unknown keys are rejected with
/// their paths, and the resulting problem must pass validate(). Throws
/// ScenarioError listing every problem found.
Scenario parse_scenario(const std::string& text);

}  // namespace dpp
