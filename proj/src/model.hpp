#pragma once

#include <string>
#include <vector>

#include "grid.hpp"
#include "state.hpp"
#include "time_series.hpp"

namespace dpp {

/// Diagonal permeability tensor, one entry per axis per cell (yy ignored in 1D).
struct DiagPerm {
  CellField xx;
  CellField yy;
};

struct Material {
  double gamma = 0.0;  // true density
  double mu = 0.0;     // dynamic viscosity
  double beta = 0.0;   // inter-network mass-transfer coefficient
  CellField phi1, phi2;
  DiagPerm k1, k2;
};

Material uniform_material(const StructuredGrid& g, double gamma, double mu, double beta,
                          double phi1, double phi2, double k1, double k2);

/// Face-located drag coefficient mu * (1/K) with 1/K arithmetically averaged
/// from the two adjacent cells (single-cell copy on boundary faces).
FaceField drag_coefficient(const StructuredGrid& g, double mu, const DiagPerm& k);

enum class BcKind { Velocity, Pressure };

/// Boundary conditions for one network. Entries align with
/// grid.boundary_faces(); un holds the prescribed outward-normal velocity on
/// Velocity faces, pp the prescribed pressure on Pressure faces (the other
/// entries are ignored). Both series have width = number of boundary faces.
struct NetworkBC {
  std::vector<BcKind> kind;
  TimeSeries un;
  TimeSeries pp;
};

struct LoadSet {
  TimeSeries b1, b2;   // specific body force sampled at faces (width = num_faces)
  FaceField u01, u02;  // initial Darcy velocities
};

/// What to do when the pressure fields carry a nullspace (no pressure boundary
/// anywhere): fix the arbitrary constant by a zero-mean constraint, or refuse.
enum class PressurePin { ZeroMean, None };

struct DppProblem {
  StructuredGrid grid;
  Material material;
  NetworkBC bc1, bc2;
  LoadSet loads;
  double T = 0.0;
  int steps = 0;
  PressurePin pin = PressurePin::ZeroMean;

  double dt() const { return T / steps; }
};

/// Invariant check; each violation names the broken invariant. Never throws.
std::vector<std::string> validate(const DppProblem& problem);

/// Residuals of the governing equations evaluated at a trajectory with the
/// grid operators and discrete time derivatives. Momentum residuals are
/// blanked on velocity-BC boundary faces (the strong condition covers those).
struct PdeResiduals {
  TimeSeries mom1, mom2;    // width = num_faces
  TimeSeries mass1, mass2;  // width = num_cells
};
PdeResiduals pde_residuals(const Trajectory& traj, const DppProblem& problem);

/// L2-in-space, max-in-time norm of a face-residual series, optionally
/// restricted to interior faces (the boundary closure is lower order).
double face_residual_norm(const StructuredGrid& g, const TimeSeries& r,
                          bool interior_only);
double cell_residual_norm(const StructuredGrid& g, const TimeSeries& r);

}  // namespace dpp
