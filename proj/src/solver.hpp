#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "state.hpp"

namespace dpp {

enum class Scheme { BackwardEuler, CrankNicolson };

/// Pressure fields are undetermined (no pressure boundary and pinning
/// disabled).
struct NullspaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The linear solve failed or did not reach the residual tolerance.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LinearSystemStats {
  std::vector<double> step_residuals;  // relative residual per time step
  double max_residual = 0.0;
  std::vector<std::string> warnings;
};

/// One implicit step from the given snapshot (its time selects the load and
/// boundary samples). Backward Euler or Crank-Nicolson in the momentum
/// equations; mass balance enforced at the new time level.
StateSnapshot step(const DppProblem& problem, const StateSnapshot& state, Scheme scheme);

/// Full integration: snapshot 0 carries the prescribed initial velocities and
/// a consistent initial pressure (solved from the time-differentiated mass
/// constraints), snapshots 1..N from repeated stepping. The system matrix is
/// factorized once.
Trajectory solve(const DppProblem& problem, Scheme scheme,
                 LinearSystemStats* stats = nullptr);

}  // namespace dpp
