#pragma once

#include "model.hpp"
#include "state.hpp"

namespace dpp {

/// Convolution work functional pairing one trajectory's macro (network=0) or
/// micro (network=1) solution pair with the prescribed data of `loads`:
///   <S;P>(t) = int u * (gamma b) dOmega + int (gamma/phi) u(t).u0 dOmega
///            - int_{Gamma^p} (u.n) * p_p dGamma + int_{Gamma^u} p * u_n dGamma
/// The boundary partition is taken from `loads` and must match the partition
/// the solution was computed under.
TimeSeries functional(const Trajectory& sol, const DppProblem& loads, int network);

struct ReciprocityResult {
  TimeSeries r;                // cross-pairing residual series
  double max_functional = 0.0; // largest magnitude among the four functionals
  double normalized = 0.0;     // max|r| / max_functional
};

/// Theorem 4.1 cross-pairing: [<S2;P1>_macro + <S2;P1>_micro] minus the same
/// with the roles swapped. Both problems must share grid, material, and
/// boundary partitions.
ReciprocityResult reciprocity_residual(const Trajectory& t1, const DppProblem& p1,
                                       const Trajectory& t2, const DppProblem& p2);

/// u.n at the boundary faces of one network's velocity field (width = number
/// of boundary faces).
TimeSeries boundary_normal_series(const Trajectory& traj, int network);

/// Second-order extrapolated pressure trace at the boundary faces.
TimeSeries boundary_trace_series(const Trajectory& traj, int network);

}  // namespace dpp
