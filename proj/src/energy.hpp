#pragma once

#include "model.hpp"
#include "solver.hpp"
#include "state.hpp"

namespace dpp {

/// Energy of a difference trajectory and its first two time derivatives,
/// each computed from more than one provenance so discretization error can be
/// told apart from implementation bugs:
///  - *_formula: the integrand identities with discrete time derivatives
///  - Edot_dissipation: the drag + mass-exchange dissipation form
///  - *_fd: plain finite differences of the E samples
struct EnergySeries {
  TimeSeries E;
  TimeSeries Edot_formula, Edot_dissipation, Edot_fd;
  TimeSeries Eddot_formula, Eddot_fd;
};

/// E(t) = sum_i integral (gamma/phi_i)/2 |w_i|^2.
TimeSeries energy(const Trajectory& diff, const Material& mat);

/// Same quadrature applied to one snapshot's velocities.
double kinetic_energy(const StructuredGrid& g, const StateSnapshot& s,
                      const Material& mat);

/// v_i = u_i / phi_i with porosity averaged to faces. Throws on nonpositive
/// porosity.
void seepage_velocities(const StructuredGrid& g, const StateSnapshot& s,
                        const Material& mat, FaceField* v1, FaceField* v2);

EnergySeries energy_rates(const Trajectory& diff, const Material& mat);

/// margin(t) = E(t) Eddot(t) - Edot(t)^2 (formula provenance); nonnegative
/// for exact solutions by the log-convexity proposition.
TimeSeries log_convexity_margin(const EnergySeries& es);

/// margin(t) = E(t) - E(t1) exp[Edot(t1)(t - t1)/E(t1)] for t >= t1 (zero
/// before t1). Throws std::invalid_argument when E(t1) is not positive.
TimeSeries exponential_bound_margin(const EnergySeries& es, double t1);

struct UniquenessReport {
  TimeSeries E;
  TimeSeries log_margin;
  TimeSeries exp_margin;
  double min_energy = 0.0;
  double max_energy = 0.0;
  double worst_log_margin = 0.0;  // min over t
  double worst_exp_margin = 0.0;
  double c_estimate_q1 = 0.0;     // max over t of |spatial mean of q_i|
  double c_estimate_q2 = 0.0;
  bool identical = false;         // difference below tolerance everywhere
  bool pass = false;
};

/// Solve the problem twice (its own initial velocities vs the given pair),
/// form the difference, and evaluate the uniqueness diagnostics. `tol` bounds
/// the allowed negative part of both margins.
UniquenessReport uniqueness_experiment(const DppProblem& problem, const FaceField& u01b,
                                       const FaceField& u02b, Scheme scheme, double tol);

}  // namespace dpp
