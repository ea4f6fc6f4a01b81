#include "reciprocity.hpp"

#include <cmath>
#include <stdexcept>

namespace dpp {

namespace {

bool same_setup(const DppProblem& a, const DppProblem& b) {
  if (a.grid.dimension() != b.grid.dimension() || a.grid.nx() != b.grid.nx() ||
      a.grid.ny() != b.grid.ny() || a.grid.extent_x() != b.grid.extent_x() ||
      a.grid.extent_y() != b.grid.extent_y())
    return false;
  if (a.material.gamma != b.material.gamma || a.material.mu != b.material.mu ||
      a.material.beta != b.material.beta || a.material.phi1 != b.material.phi1 ||
      a.material.phi2 != b.material.phi2 || a.material.k1.xx != b.material.k1.xx ||
      a.material.k2.xx != b.material.k2.xx)
    return false;
  return a.bc1.kind == b.bc1.kind && a.bc2.kind == b.bc2.kind && a.T == b.T &&
         a.steps == b.steps;
}

FaceField gamma_over_phi(const StructuredGrid& g, double gamma, const CellField& phi) {
  FaceField f = face_average(g, phi);
  for (auto& v : f.x) v = gamma / v;
  for (auto& v : f.y) v = gamma / v;
  return f;
}

}  // namespace

TimeSeries boundary_normal_series(const Trajectory& traj, int network) {
  const auto& g = traj.grid;
  const auto& bfaces = g.boundary_faces();
  TimeSeries s;
  s.dt = traj.dt;
  s.samples.assign(traj.snapshots.size(), std::vector<double>(bfaces.size(), 0.0));
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const FaceField& u = network == 0 ? traj.snapshots[k].u1 : traj.snapshots[k].u2;
    for (std::size_t b = 0; b < bfaces.size(); ++b) {
      const auto& bf = bfaces[b];
      s.samples[k][b] = bf.sign * (bf.axis == 0 ? u.x : u.y)[bf.face];
    }
  }
  return s;
}

TimeSeries boundary_trace_series(const Trajectory& traj, int network) {
  const auto& g = traj.grid;
  const auto& bfaces = g.boundary_faces();
  TimeSeries s;
  s.dt = traj.dt;
  s.samples.assign(traj.snapshots.size(), std::vector<double>(bfaces.size(), 0.0));
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const CellField& p = network == 0 ? traj.snapshots[k].p1 : traj.snapshots[k].p2;
    for (std::size_t b = 0; b < bfaces.size(); ++b) {
      const auto& bf = bfaces[b];
      s.samples[k][b] = 0.5 * (3.0 * p[bf.cell] - p[bf.cell2]);
    }
  }
  return s;
}

TimeSeries functional(const Trajectory& sol, const DppProblem& loads, int network) {
  const auto& g = sol.grid;
  if (g.num_cells() != loads.grid.num_cells() ||
      g.num_faces() != loads.grid.num_faces())
    throw std::invalid_argument("functional: trajectory and loads on different grids");
  const Material& mat = loads.material;
  const NetworkBC& bc = network == 0 ? loads.bc1 : loads.bc2;
  const TimeSeries& b = network == 0 ? loads.loads.b1 : loads.loads.b2;
  const FaceField& u0 = network == 0 ? loads.loads.u01 : loads.loads.u02;
  const CellField& phi = network == 0 ? mat.phi1 : mat.phi2;

  TimeSeries u = network == 0 ? sol.u1_series() : sol.u2_series();
  if (u.samples.size() != b.samples.size() ||
      std::abs(u.dt - b.dt) > 1e-12 * std::abs(b.dt))
    throw std::invalid_argument("functional: mismatched time axes");

  TimeSeries out = convolve_reduce(u, scale(b, mat.gamma), g.face_weights());

  const FaceField c = gamma_over_phi(g, mat.gamma, phi);
  for (std::size_t k = 0; k < out.samples.size(); ++k)
    out.samples[k][0] += integrate_faces(g, c, g.unflatten(u.samples[k]), u0);

  const auto& bfaces = g.boundary_faces();
  std::vector<double> wp(bfaces.size(), 0.0), wu(bfaces.size(), 0.0);
  for (std::size_t i = 0; i < bfaces.size(); ++i)
    (bc.kind[i] == BcKind::Pressure ? wp : wu)[i] = bfaces[i].area;

  auto un_sol = boundary_normal_series(sol, network);
  auto t3 = convolve_reduce(un_sol, bc.pp, wp);
  auto p_trace = boundary_trace_series(sol, network);
  auto t4 = convolve_reduce(p_trace, bc.un, wu);
  for (std::size_t k = 0; k < out.samples.size(); ++k)
    out.samples[k][0] += t4.samples[k][0] - t3.samples[k][0];
  return out;
}

ReciprocityResult reciprocity_residual(const Trajectory& t1, const DppProblem& p1,
                                       const Trajectory& t2, const DppProblem& p2) {
  if (!same_setup(p1, p2))
    throw std::invalid_argument(
        "reciprocity: problems differ in grid, material, or boundary partition");
  TimeSeries cross21 = add(functional(t2, p1, 0), functional(t2, p1, 1));
  TimeSeries cross12 = add(functional(t1, p2, 0), functional(t1, p2, 1));

  ReciprocityResult res;
  res.r = subtract(cross21, cross12);
  for (const TimeSeries* f : {&cross21, &cross12})
    res.max_functional = std::max(res.max_functional, max_abs(*f));
  // split pairings for the normalization scale
  for (int net : {0, 1}) {
    res.max_functional = std::max(res.max_functional, max_abs(functional(t2, p1, net)));
    res.max_functional = std::max(res.max_functional, max_abs(functional(t1, p2, net)));
  }
  res.normalized = max_abs(res.r) / std::max(res.max_functional, 1e-300);
  return res;
}

}  // namespace dpp
