#pragma once

#include <random>

#include "model.hpp"
#include "state.hpp"

namespace dpp {

/// Residuals of the convolved (integrated-in-time) form of the governing
/// equations. A trajectory solves the original system iff all eight vanish.
struct EquivalentFormResiduals {
  TimeSeries mom1, mom2;    // faces: (g/phi)u + 1*(mu K^-1 u) + 1*grad p - 1*(g b) - (g/phi)u0
  TimeSeries mass1, mass2;  // cells: 1*(div u -+ (beta/mu)(p1-p2))
  TimeSeries vbc1, vbc2;    // boundary faces: 1*(u.n - u_n) on the velocity part
  TimeSeries pbc1, pbc2;    // boundary faces: 1*(p - p_p) on the pressure part
};

struct EquivalentNorms {
  double mom1 = 0, mom2 = 0, mass1 = 0, mass2 = 0;
  double vbc1 = 0, vbc2 = 0, pbc1 = 0, pbc2 = 0;
  double max() const;
};

EquivalentFormResiduals equivalent_residuals(const Trajectory& traj,
                                             const DppProblem& prob);
EquivalentNorms equivalent_norms(const StructuredGrid& g,
                                 const EquivalentFormResiduals& r);

/// The convolution action functional: a scalar time series whose stationary
/// points over (u1, u2, p1, p2) are the solutions of the governing equations.
TimeSeries psi(const Trajectory& traj, const DppProblem& prob);

/// Perturbation direction with the same shape and time axis as a trajectory.
struct VariationDirection {
  TimeSeries du1, du2;  // width = number of faces
  TimeSeries dp1, dp2;  // width = number of cells
};

VariationDirection zero_direction(const StructuredGrid& g, std::size_t steps,
                                  double dt);
/// Entries uniform in [-1,1], scaled to unit sup norm.
VariationDirection random_direction(const StructuredGrid& g, std::size_t steps,
                                    double dt, std::mt19937_64& rng);
double direction_norm(const VariationDirection& d);

Trajectory apply_direction(const Trajectory& traj, const VariationDirection& d,
                           double eps);

/// Gateaux variation of psi at `traj` along `d`, evaluated two independent
/// ways: term-by-term assembly of the first-variation expression, and a
/// central finite difference of psi. eps <= 0 picks a step automatically.
struct GateauxResult {
  TimeSeries assembled;
  TimeSeries finite_difference;
};

GateauxResult gateaux_variation(const Trajectory& traj, const DppProblem& prob,
                                const VariationDirection& d, double eps = 0.0);

}  // namespace dpp
