#include "manufactured.hpp"

#include <cmath>

namespace dpp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

NetworkBC uniform_bc(const StructuredGrid& g, int steps, double dt, BcKind kind,
                     double value) {
  const std::size_t nb = g.boundary_faces().size();
  NetworkBC bc;
  bc.kind.assign(nb, kind);
  bc.un = constant_series(dt, steps, kind == BcKind::Velocity ? value : 0.0, nb);
  bc.pp = constant_series(dt, steps, kind == BcKind::Pressure ? value : 0.0, nb);
  return bc;
}

LoadSet zero_loads(const StructuredGrid& g, int steps, double dt) {
  LoadSet l;
  l.b1 = constant_series(dt, steps, 0.0, g.num_faces());
  l.b2 = l.b1;
  l.u01 = g.make_face_field();
  l.u02 = g.make_face_field();
  return l;
}

ManufacturedCase rest_case(const StructuredGrid& g, double T, int steps) {
  const double dt = T / steps;
  ManufacturedCase mc;
  mc.problem.grid = g;
  mc.problem.material = uniform_material(g, 1.0, 1.0, 0.5, 0.4, 0.5, 1.0, 1.0);
  mc.problem.bc1 = uniform_bc(g, steps, dt, BcKind::Pressure, 0.0);
  mc.problem.bc2 = uniform_bc(g, steps, dt, BcKind::Pressure, 0.0);
  mc.problem.loads = zero_loads(g, steps, dt);
  mc.problem.T = T;
  mc.problem.steps = steps;

  mc.reference.grid = g;
  mc.reference.dt = dt;
  mc.reference.snapshots.resize(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    auto& s = mc.reference.snapshots[k];
    s.t = k * dt;
    s.u1 = s.u2 = g.make_face_field();
    s.p1 = s.p2 = g.make_cell_field();
  }
  return mc;
}

ManufacturedCase decay_case(const StructuredGrid& g, const DecayParams& prm, double T,
                            int steps) {
  const double dt = T / steps;
  ManufacturedCase mc;
  mc.problem.grid = g;
  mc.problem.material = uniform_material(g, prm.gamma, prm.mu, prm.beta, prm.phi1,
                                         prm.phi2, prm.k1, prm.k2);
  mc.problem.bc1 = uniform_bc(g, steps, dt, BcKind::Pressure, 0.0);
  mc.problem.bc2 = uniform_bc(g, steps, dt, BcKind::Pressure, 0.0);
  mc.problem.loads = zero_loads(g, steps, dt);
  mc.problem.loads.u01.x.assign(g.num_faces_x(), prm.a01);
  mc.problem.loads.u02.x.assign(g.num_faces_x(), prm.a02);
  mc.problem.T = T;
  mc.problem.steps = steps;

  const double l1 = decay_rate(prm.mu, prm.phi1, prm.k1, prm.gamma);
  const double l2 = decay_rate(prm.mu, prm.phi2, prm.k2, prm.gamma);
  mc.reference.grid = g;
  mc.reference.dt = dt;
  mc.reference.snapshots.resize(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    auto& s = mc.reference.snapshots[k];
    s.t = k * dt;
    s.u1 = g.make_face_field();
    s.u2 = g.make_face_field();
    s.u1.x.assign(g.num_faces_x(), prm.a01 * std::exp(-l1 * s.t));
    s.u2.x.assign(g.num_faces_x(), prm.a02 * std::exp(-l2 * s.t));
    s.p1 = g.make_cell_field();
    s.p2 = g.make_cell_field();
  }
  return mc;
}

ManufacturedCase smooth_case(int cells, const SmoothParams& prm, double T, int steps) {
  const auto g = StructuredGrid::make(1, {1.0}, {cells});
  const double dt = T / steps;
  const auto fpos = face_centers(g);
  const auto cpos = cell_centers(g);

  auto sigma = [](double t) { return std::exp(-t); };
  auto u1_of = [&](double x, double t) {
    return sigma(t) * std::cos(kTwoPi * x) / kTwoPi;
  };
  auto p1_of = [&](double x, double t) {
    return 0.5 * (prm.mu / prm.beta) * std::sin(kTwoPi * x) * sigma(t);
  };
  // gamma*b_i from the momentum balance at the analytic fields.
  const double c1 = (-prm.gamma / prm.phi1 + prm.mu / prm.k1) / kTwoPi +
                    prm.mu * kTwoPi / (2.0 * prm.beta);
  const double c2 = (prm.gamma / prm.phi2 - prm.mu / prm.k2) / kTwoPi -
                    prm.mu * kTwoPi / (2.0 * prm.beta);
  auto b1_of = [&](double x, double t) {
    return c1 * std::cos(kTwoPi * x) * sigma(t) / prm.gamma;
  };
  auto b2_of = [&](double x, double t) {
    return c2 * std::cos(kTwoPi * x) * sigma(t) / prm.gamma;
  };

  ManufacturedCase mc;
  mc.problem.grid = g;
  mc.problem.material = uniform_material(g, prm.gamma, prm.mu, prm.beta, prm.phi1,
                                         prm.phi2, prm.k1, prm.k2);
  mc.problem.T = T;
  mc.problem.steps = steps;

  const auto& bfaces = g.boundary_faces();
  NetworkBC bc1, bc2;
  bc1.kind.assign(bfaces.size(), BcKind::Pressure);
  bc2.kind.assign(bfaces.size(), BcKind::Velocity);
  bc1.un = constant_series(dt, steps, 0.0, bfaces.size());
  bc1.pp = bc1.un;
  bc2.un = bc1.un;
  bc2.pp = bc1.un;
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    for (std::size_t b = 0; b < bfaces.size(); ++b) {
      const double x = bfaces[b].sign < 0 ? 0.0 : 1.0;
      bc1.pp.samples[k][b] = p1_of(x, t);
      bc2.un.samples[k][b] = -u1_of(x, t) * bfaces[b].sign;  // u2 = -u1
    }
  }
  mc.problem.bc1 = bc1;
  mc.problem.bc2 = bc2;

  LoadSet loads;
  loads.b1 = constant_series(dt, steps, 0.0, g.num_faces());
  loads.b2 = loads.b1;
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    for (std::size_t f = 0; f < g.num_faces(); ++f) {
      loads.b1.samples[k][f] = b1_of(fpos[f][0], t);
      loads.b2.samples[k][f] = b2_of(fpos[f][0], t);
    }
  }
  loads.u01 = g.make_face_field();
  loads.u02 = g.make_face_field();
  for (std::size_t f = 0; f < g.num_faces_x(); ++f) {
    loads.u01.x[f] = u1_of(fpos[f][0], 0.0);
    loads.u02.x[f] = -u1_of(fpos[f][0], 0.0);
  }
  mc.problem.loads = loads;

  mc.reference.grid = g;
  mc.reference.dt = dt;
  mc.reference.snapshots.resize(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    auto& s = mc.reference.snapshots[k];
    s.t = k * dt;
    s.u1 = g.make_face_field();
    s.u2 = g.make_face_field();
    s.p1 = g.make_cell_field();
    s.p2 = g.make_cell_field();
    for (std::size_t f = 0; f < g.num_faces_x(); ++f) {
      s.u1.x[f] = u1_of(fpos[f][0], s.t);
      s.u2.x[f] = -s.u1.x[f];
    }
    for (std::size_t c = 0; c < g.num_cells(); ++c) {
      s.p1[c] = p1_of(cpos[c][0], s.t);
      s.p2[c] = -s.p1[c];
    }
  }
  return mc;
}

}  // namespace dpp
