#include "model.hpp"

#include <cmath>
#include <stdexcept>

namespace dpp {

Material uniform_material(const StructuredGrid& g, double gamma, double mu, double beta,
                          double phi1, double phi2, double k1, double k2) {
  Material m;
  m.gamma = gamma;
  m.mu = mu;
  m.beta = beta;
  m.phi1 = g.make_cell_field(phi1);
  m.phi2 = g.make_cell_field(phi2);
  m.k1 = {g.make_cell_field(k1), g.make_cell_field(k1)};
  m.k2 = {g.make_cell_field(k2), g.make_cell_field(k2)};
  return m;
}

FaceField drag_coefficient(const StructuredGrid& g, double mu, const DiagPerm& k) {
  CellField inv_x = k.xx;
  for (auto& v : inv_x) v = 1.0 / v;
  FaceField d = face_average(g, inv_x);
  if (g.dimension() == 2) {
    CellField inv_y = k.yy;
    for (auto& v : inv_y) v = 1.0 / v;
    d.y = face_average(g, inv_y).y;
  }
  for (auto& v : d.x) v *= mu;
  for (auto& v : d.y) v *= mu;
  return d;
}

Trajectory difference_trajectory(const Trajectory& a, const Trajectory& b) {
  if (a.dt != b.dt || a.snapshots.size() != b.snapshots.size() ||
      a.grid.num_cells() != b.grid.num_cells() ||
      a.grid.num_faces() != b.grid.num_faces())
    throw std::invalid_argument("difference_trajectory: mismatched trajectories");
  Trajectory d;
  d.grid = a.grid;
  d.dt = a.dt;
  d.snapshots.resize(a.snapshots.size());
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    auto& s = d.snapshots[k];
    const auto& sa = a.snapshots[k];
    const auto& sb = b.snapshots[k];
    s.t = sa.t;
    s.u1 = sa.u1;
    s.u2 = sa.u2;
    s.p1 = sa.p1;
    s.p2 = sa.p2;
    for (std::size_t i = 0; i < s.u1.x.size(); ++i) s.u1.x[i] -= sb.u1.x[i];
    for (std::size_t i = 0; i < s.u1.y.size(); ++i) s.u1.y[i] -= sb.u1.y[i];
    for (std::size_t i = 0; i < s.u2.x.size(); ++i) s.u2.x[i] -= sb.u2.x[i];
    for (std::size_t i = 0; i < s.u2.y.size(); ++i) s.u2.y[i] -= sb.u2.y[i];
    for (std::size_t i = 0; i < s.p1.size(); ++i) s.p1[i] -= sb.p1[i];
    for (std::size_t i = 0; i < s.p2.size(); ++i) s.p2[i] -= sb.p2[i];
  }
  return d;
}

namespace {

void check_bc(const DppProblem& p, const NetworkBC& bc, const char* name,
              std::vector<std::string>& out) {
  const std::size_t nb = p.grid.boundary_faces().size();
  if (bc.kind.size() != nb) {
    out.push_back(std::string(name) + ": boundary kind list does not cover the boundary");
    return;
  }
  const std::size_t n = static_cast<std::size_t>(p.steps);
  for (const TimeSeries* s : {&bc.un, &bc.pp}) {
    if (s->samples.size() != n + 1 || s->width() != nb)
      out.push_back(std::string(name) + ": boundary data not sampled per face per step");
    else if (std::abs(s->dt - p.dt()) > 1e-12 * std::abs(p.dt()))
      out.push_back(std::string(name) + ": boundary data time step mismatch");
  }
}

}  // namespace

std::vector<std::string> validate(const DppProblem& p) {
  std::vector<std::string> out;
  if (!(p.material.gamma > 0.0)) out.push_back("density gamma must be positive");
  if (!(p.material.mu > 0.0)) out.push_back("viscosity mu must be positive");
  if (!(p.material.beta >= 0.0)) out.push_back("mass-transfer beta must be nonnegative");
  if (!(p.T > 0.0)) out.push_back("final time T must be positive");
  if (p.steps < 1) out.push_back("time steps must be >= 1");

  const std::size_t nc = p.grid.num_cells();
  for (const CellField* phi : {&p.material.phi1, &p.material.phi2}) {
    if (phi->size() != nc) {
      out.push_back("porosity field size mismatch");
      continue;
    }
    for (double v : *phi)
      if (!(v > 0.0 && v < 1.0)) {
        out.push_back("porosity out of (0,1)");
        break;
      }
  }
  for (const DiagPerm* k : {&p.material.k1, &p.material.k2}) {
    if (k->xx.size() != nc || (p.grid.dimension() == 2 && k->yy.size() != nc)) {
      out.push_back("permeability field size mismatch");
      continue;
    }
    bool bad = false;
    for (double v : k->xx) bad = bad || !(v > 0.0);
    if (p.grid.dimension() == 2)
      for (double v : k->yy) bad = bad || !(v > 0.0);
    if (bad) out.push_back("permeability diagonal must be strictly positive");
  }

  check_bc(p, p.bc1, "network 1", out);
  check_bc(p, p.bc2, "network 2", out);

  if (!p.grid.face_sized(p.loads.u01) || !p.grid.face_sized(p.loads.u02))
    out.push_back("initial velocity field size mismatch");
  if (p.steps >= 1) {
    const std::size_t n = static_cast<std::size_t>(p.steps);
    for (const TimeSeries* b : {&p.loads.b1, &p.loads.b2})
      if (b->samples.size() != n + 1 || b->width() != p.grid.num_faces())
        out.push_back("body force not sampled per face per step");
  }
  return out;
}

PdeResiduals pde_residuals(const Trajectory& traj, const DppProblem& prob) {
  const StructuredGrid& g = traj.grid;
  const Material& mat = prob.material;
  const std::size_t n = traj.steps();
  const std::size_t nf = g.num_faces();

  auto u1 = traj.u1_series();
  auto u2 = traj.u2_series();
  auto du1 = time_derivative(u1);
  auto du2 = time_derivative(u2);

  const auto d1 = g.flatten(drag_coefficient(g, mat.mu, mat.k1));
  const auto d2 = g.flatten(drag_coefficient(g, mat.mu, mat.k2));
  // 1 / (face-averaged porosity), the convention shared with solver/energy
  const auto inv_phi1 = [&] {
    auto f = g.flatten(face_average(g, mat.phi1));
    for (auto& v : f) v = 1.0 / v;
    return f;
  }();
  const auto inv_phi2 = [&] {
    auto f = g.flatten(face_average(g, mat.phi2));
    for (auto& v : f) v = 1.0 / v;
    return f;
  }();

  const auto& bfaces = g.boundary_faces();
  auto bc_values = [&](const NetworkBC& bc, std::size_t k) {
    std::vector<std::optional<double>> bv(bfaces.size());
    for (std::size_t b = 0; b < bfaces.size(); ++b)
      if (bc.kind[b] == BcKind::Pressure) bv[b] = bc.pp.samples[k][b];
    return bv;
  };

  PdeResiduals r;
  r.mom1.dt = r.mom2.dt = r.mass1.dt = r.mass2.dt = traj.dt;
  r.mom1.samples.assign(n + 1, std::vector<double>(nf, 0.0));
  r.mom2.samples.assign(n + 1, std::vector<double>(nf, 0.0));
  r.mass1.samples.assign(n + 1, std::vector<double>(g.num_cells(), 0.0));
  r.mass2.samples.assign(n + 1, std::vector<double>(g.num_cells(), 0.0));

  for (std::size_t k = 0; k <= n; ++k) {
    const auto& snap = traj.snapshots[k];
    auto g1 = g.flatten(gradient_partial(g, snap.p1, bc_values(prob.bc1, k)));
    auto g2 = g.flatten(gradient_partial(g, snap.p2, bc_values(prob.bc2, k)));
    for (std::size_t f = 0; f < nf; ++f) {
      r.mom1.samples[k][f] = mat.gamma * inv_phi1[f] * du1.samples[k][f] +
                             d1[f] * u1.samples[k][f] + g1[f] -
                             mat.gamma * prob.loads.b1.samples[k][f];
      r.mom2.samples[k][f] = mat.gamma * inv_phi2[f] * du2.samples[k][f] +
                             d2[f] * u2.samples[k][f] + g2[f] -
                             mat.gamma * prob.loads.b2.samples[k][f];
    }
    for (std::size_t b = 0; b < bfaces.size(); ++b) {
      const std::size_t flat =
          bfaces[b].axis == 0 ? bfaces[b].face : g.num_faces_x() + bfaces[b].face;
      if (prob.bc1.kind[b] == BcKind::Velocity) r.mom1.samples[k][flat] = 0.0;
      if (prob.bc2.kind[b] == BcKind::Velocity) r.mom2.samples[k][flat] = 0.0;
    }
    auto dv1 = divergence(g, snap.u1);
    auto dv2 = divergence(g, snap.u2);
    const double c = mat.beta / mat.mu;
    for (std::size_t i = 0; i < dv1.size(); ++i) {
      const double ex = c * (snap.p1[i] - snap.p2[i]);
      r.mass1.samples[k][i] = dv1[i] + ex;
      r.mass2.samples[k][i] = dv2[i] - ex;
    }
  }
  return r;
}

double face_residual_norm(const StructuredGrid& g, const TimeSeries& r,
                          bool interior_only) {
  std::vector<bool> skip(g.num_faces(), false);
  if (interior_only)
    for (const auto& bf : g.boundary_faces())
      skip[bf.axis == 0 ? bf.face : g.num_faces_x() + bf.face] = true;
  const auto& w = g.face_weights();
  double worst = 0.0;
  for (const auto& s : r.samples) {
    double acc = 0.0;
    for (std::size_t f = 0; f < s.size(); ++f)
      if (!skip[f]) acc += w[f] * s[f] * s[f];
    worst = std::max(worst, std::sqrt(acc));
  }
  return worst;
}

double cell_residual_norm(const StructuredGrid& g, const TimeSeries& r) {
  double worst = 0.0;
  for (const auto& s : r.samples) {
    double acc = 0.0;
    for (double v : s) acc += v * v;
    worst = std::max(worst, std::sqrt(acc * g.cell_volume()));
  }
  return worst;
}

}  // namespace dpp
