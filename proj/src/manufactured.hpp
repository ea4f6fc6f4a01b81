#pragma once

#include "model.hpp"
#include "state.hpp"

namespace dpp {

/// A problem together with the analytic solution it was reverse-engineered
/// from, sampled on the grid at the solver's time nodes.
struct ManufacturedCase {
  DppProblem problem;
  Trajectory reference;
};

/// Same-kind boundary condition on every boundary face of both partitions,
/// with constant data, sampled on the problem's time axis.
NetworkBC uniform_bc(const StructuredGrid& g, int steps, double dt, BcKind kind,
                     double value = 0.0);

/// Zero body forces and zero initial velocities.
LoadSet zero_loads(const StructuredGrid& g, int steps, double dt);

/// Rest state: zero fields, zero forcing, constant (zero) boundary pressure.
ManufacturedCase rest_case(const StructuredGrid& g, double T, int steps);

struct DecayParams {
  double gamma = 1.0, mu = 1.0, beta = 0.0;
  double phi1 = 0.5, phi2 = 0.5;
  double k1 = 1.0, k2 = 1.0;
  double a01 = 1.0, a02 = 0.0;  // initial uniform velocities (x component)
};

/// Decay rate of a spatially uniform zero-pressure mode: lambda = mu*phi/(gamma*K).
inline double decay_rate(double mu, double phi, double k, double gamma) {
  return mu * phi / (gamma * k);
}

/// Spatially uniform free decay u_i(t) = a0_i exp(-lambda_i t), p = 0, b = 0,
/// homogeneous pressure BCs everywhere. Exact discrete solution is a scalar
/// recurrence, so this case isolates the time integrator.
ManufacturedCase decay_case(const StructuredGrid& g, const DecayParams& prm, double T,
                            int steps);

struct SmoothParams {
  double gamma = 1.2, mu = 0.8, beta = 0.5;
  double phi1 = 0.3, phi2 = 0.6;
  double k1 = 1.5, k2 = 0.7;
};

/// Smooth 1D case on the unit interval with active inter-network exchange:
///   p1 - p2 = (mu/beta) sin(2 pi x) exp(-t),  u1 = -u2 = exp(-t) cos(2 pi x)/(2 pi)
/// Mass balance holds identically; body forces are read off the momentum
/// equations. Network 1 carries pressure BCs, network 2 velocity BCs.
ManufacturedCase smooth_case(int cells, const SmoothParams& prm, double T, int steps);

}  // namespace dpp
