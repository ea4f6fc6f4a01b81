#include "variational.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace dpp {

namespace {

// Symmetrized double convolution a*1*b; exactly symmetric in (a, b), which
// makes the assembled Gateaux variation the exact derivative of psi.
TimeSeries sym_star(const TimeSeries& a, const TimeSeries& b) {
  return scale(add(convolve(a, one_star(b)), convolve(one_star(a), b)), 0.5);
}

TimeSeries sym_reduce(const TimeSeries& a, const TimeSeries& b,
                      const std::vector<double>& w) {
  return scale(add(convolve_reduce(a, one_star(b), w),
                   convolve_reduce(one_star(a), b, w)),
               0.5);
}

TimeSeries mul(TimeSeries s, const std::vector<double>& c) {
  for (auto& sample : s.samples)
    for (std::size_t i = 0; i < sample.size(); ++i) sample[i] *= c[i];
  return s;
}

std::size_t boundary_flat(const StructuredGrid& g, const BoundaryFace& bf) {
  return bf.axis == 0 ? bf.face : g.num_faces_x() + bf.face;
}

std::vector<double> gamma_over_phi_flat(const StructuredGrid& g, double gamma,
                                        const CellField& phi) {
  auto c = g.flatten(face_average(g, phi));
  for (auto& v : c) v = gamma / v;
  return c;
}

// Per-network ingredients shared by psi, the residuals, and the variation.
struct NetworkSeries {
  TimeSeries u;      // faces
  TimeSeries p;      // cells
  TimeSeries div_u;  // cells
  TimeSeries grad_p; // faces, BC pressure in the boundary stencil
  TimeSeries gb;     // faces, gamma * b
  TimeSeries u0;     // faces, constant in time
  TimeSeries un_sol; // boundary faces, u.n
  TimeSeries trace;  // boundary faces, extrapolated p
  TimeSeries p_cell; // boundary faces, adjacent cell pressure
  std::vector<double> c;     // gamma / phi at faces
  std::vector<double> drag;  // mu K^-1 at faces
};

TimeSeries cell_series_trace(const StructuredGrid& g, const TimeSeries& p) {
  const auto& bf = g.boundary_faces();
  TimeSeries out;
  out.dt = p.dt;
  out.samples.assign(p.samples.size(), std::vector<double>(bf.size(), 0.0));
  for (std::size_t k = 0; k < p.samples.size(); ++k)
    for (std::size_t b = 0; b < bf.size(); ++b)
      out.samples[k][b] =
          0.5 * (3.0 * p.samples[k][bf[b].cell] - p.samples[k][bf[b].cell2]);
  return out;
}

NetworkSeries network_series(const Trajectory& traj, const DppProblem& prob,
                             int net) {
  const auto& g = traj.grid;
  const Material& mat = prob.material;
  const NetworkBC& bc = net == 0 ? prob.bc1 : prob.bc2;
  const auto& bfaces = g.boundary_faces();

  NetworkSeries s;
  s.u = net == 0 ? traj.u1_series() : traj.u2_series();
  s.p = net == 0 ? traj.p1_series() : traj.p2_series();
  s.c = gamma_over_phi_flat(g, mat.gamma, net == 0 ? mat.phi1 : mat.phi2);
  s.drag = g.flatten(drag_coefficient(g, mat.mu, net == 0 ? mat.k1 : mat.k2));
  s.gb = scale(net == 0 ? prob.loads.b1 : prob.loads.b2, mat.gamma);
  s.u0 = constant_series(traj.dt, traj.steps(), 0.0, g.num_faces());
  {
    auto u0flat = g.flatten(net == 0 ? prob.loads.u01 : prob.loads.u02);
    for (auto& sample : s.u0.samples) sample = u0flat;
  }

  const std::size_t n = traj.steps();
  s.div_u.dt = s.grad_p.dt = s.un_sol.dt = s.p_cell.dt = traj.dt;
  s.div_u.samples.resize(n + 1);
  s.grad_p.samples.resize(n + 1);
  s.un_sol.samples.assign(n + 1, std::vector<double>(bfaces.size(), 0.0));
  s.p_cell.samples.assign(n + 1, std::vector<double>(bfaces.size(), 0.0));
  for (std::size_t k = 0; k <= n; ++k) {
    const auto& snap = traj.snapshots[k];
    const FaceField& u = net == 0 ? snap.u1 : snap.u2;
    const CellField& p = net == 0 ? snap.p1 : snap.p2;
    s.div_u.samples[k] = divergence(g, u);
    std::vector<std::optional<double>> bv(bfaces.size());
    for (std::size_t b = 0; b < bfaces.size(); ++b)
      if (bc.kind[b] == BcKind::Pressure) bv[b] = bc.pp.samples[k][b];
    s.grad_p.samples[k] = g.flatten(gradient_partial(g, p, bv));
    for (std::size_t b = 0; b < bfaces.size(); ++b) {
      const auto& bf = bfaces[b];
      s.un_sol.samples[k][b] = bf.sign * (bf.axis == 0 ? u.x : u.y)[bf.face];
      s.p_cell.samples[k][b] = p[bf.cell];
    }
  }
  s.trace = cell_series_trace(g, s.p);
  return s;
}

// boundary quadrature weights restricted to one kind
std::vector<double> masked_area(const StructuredGrid& g, const NetworkBC& bc,
                                BcKind kind) {
  const auto& bfaces = g.boundary_faces();
  std::vector<double> w(bfaces.size(), 0.0);
  for (std::size_t b = 0; b < bfaces.size(); ++b)
    if (bc.kind[b] == kind) w[b] = bfaces[b].area;
  return w;
}

TimeSeries boundary_from_faces(const StructuredGrid& g, const TimeSeries& faces) {
  const auto& bfaces = g.boundary_faces();
  TimeSeries out;
  out.dt = faces.dt;
  out.samples.assign(faces.samples.size(), std::vector<double>(bfaces.size(), 0.0));
  for (std::size_t k = 0; k < faces.samples.size(); ++k)
    for (std::size_t b = 0; b < bfaces.size(); ++b)
      out.samples[k][b] =
          bfaces[b].sign * faces.samples[k][boundary_flat(g, bfaces[b])];
  return out;
}

void check_conforming(const Trajectory& traj, const DppProblem& prob) {
  if (traj.grid.num_cells() != prob.grid.num_cells() ||
      traj.grid.num_faces() != prob.grid.num_faces() ||
      traj.steps() != static_cast<std::size_t>(prob.steps))
    throw std::invalid_argument("variational: trajectory does not match problem");
}

void check_direction(const Trajectory& traj, const VariationDirection& d) {
  const std::size_t n = traj.steps() + 1;
  if (d.du1.samples.size() != n || d.du2.samples.size() != n ||
      d.dp1.samples.size() != n || d.dp2.samples.size() != n ||
      d.du1.width() != traj.grid.num_faces() ||
      d.du2.width() != traj.grid.num_faces() ||
      d.dp1.width() != traj.grid.num_cells() ||
      d.dp2.width() != traj.grid.num_cells())
    throw std::invalid_argument("variational: direction shape mismatch");
}

}  // namespace

double EquivalentNorms::max() const {
  return std::max({mom1, mom2, mass1, mass2, vbc1, vbc2, pbc1, pbc2});
}

EquivalentFormResiduals equivalent_residuals(const Trajectory& traj,
                                             const DppProblem& prob) {
  check_conforming(traj, prob);
  const auto& g = traj.grid;
  const double bm = prob.material.beta / prob.material.mu;
  EquivalentFormResiduals r;
  TimeSeries q;
  {
    auto p1 = traj.p1_series();
    q = subtract(p1, traj.p2_series());
  }
  for (int net : {0, 1}) {
    auto s = network_series(traj, prob, net);
    const NetworkBC& bc = net == 0 ? prob.bc1 : prob.bc2;

    TimeSeries mom = add(mul(s.u, s.c),
                         one_star(add(mul(s.u, s.drag), subtract(s.grad_p, s.gb))));
    mom = subtract(mom, mul(s.u0, s.c));
    // momentum is not imposed on strongly constrained faces
    const auto& bfaces = g.boundary_faces();
    for (std::size_t b = 0; b < bfaces.size(); ++b)
      if (bc.kind[b] == BcKind::Velocity)
        for (auto& sample : mom.samples) sample[boundary_flat(g, bfaces[b])] = 0.0;

    TimeSeries mass = one_star(add(s.div_u, scale(q, net == 0 ? bm : -bm)));
    TimeSeries vbc = one_star(subtract(s.un_sol, bc.un));
    TimeSeries pbc = one_star(subtract(s.trace, bc.pp));
    for (std::size_t b = 0; b < bfaces.size(); ++b) {
      const bool vel = bc.kind[b] == BcKind::Velocity;
      for (std::size_t k = 0; k < vbc.samples.size(); ++k) {
        if (!vel) vbc.samples[k][b] = 0.0;
        if (vel) pbc.samples[k][b] = 0.0;
      }
    }
    (net == 0 ? r.mom1 : r.mom2) = std::move(mom);
    (net == 0 ? r.mass1 : r.mass2) = std::move(mass);
    (net == 0 ? r.vbc1 : r.vbc2) = std::move(vbc);
    (net == 0 ? r.pbc1 : r.pbc2) = std::move(pbc);
  }
  return r;
}

EquivalentNorms equivalent_norms(const StructuredGrid& g,
                                 const EquivalentFormResiduals& r) {
  auto boundary_norm = [&](const TimeSeries& s) {
    const auto& bfaces = g.boundary_faces();
    double worst = 0.0;
    for (const auto& sample : s.samples) {
      double acc = 0.0;
      for (std::size_t b = 0; b < bfaces.size(); ++b)
        acc += bfaces[b].area * sample[b] * sample[b];
      worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
  };
  EquivalentNorms n;
  n.mom1 = face_residual_norm(g, r.mom1, false);
  n.mom2 = face_residual_norm(g, r.mom2, false);
  n.mass1 = cell_residual_norm(g, r.mass1);
  n.mass2 = cell_residual_norm(g, r.mass2);
  n.vbc1 = boundary_norm(r.vbc1);
  n.vbc2 = boundary_norm(r.vbc2);
  n.pbc1 = boundary_norm(r.pbc1);
  n.pbc2 = boundary_norm(r.pbc2);
  return n;
}

TimeSeries psi(const Trajectory& traj, const DppProblem& prob) {
  check_conforming(traj, prob);
  const auto& g = traj.grid;
  const Material& mat = prob.material;
  const auto& w = g.face_weights();
  const std::vector<double> wcell(g.num_cells(), g.cell_volume());

  TimeSeries total = constant_series(traj.dt, traj.steps(), 0.0, 1);
  for (int net : {0, 1}) {
    auto s = network_series(traj, prob, net);
    const NetworkBC& bc = net == 0 ? prob.bc1 : prob.bc2;
    std::vector<double> wc(w), wd(w);
    for (std::size_t f = 0; f < w.size(); ++f) {
      wc[f] *= s.c[f];
      wd[f] *= s.drag[f];
    }
    total = add(total, scale(convolve_reduce(s.u, s.u, wc), 0.5));
    total = add(total, scale(sym_reduce(s.u, s.u, wd), 0.5));
    total = subtract(total, sym_reduce(s.div_u, s.p, wcell));
    total = subtract(total, sym_reduce(s.u, s.gb, w));
    total = subtract(total, convolve_reduce(s.u, s.u0, wc));
    total = add(total, sym_reduce(bc.un, s.trace,
                                  masked_area(g, bc, BcKind::Velocity)));
    total = add(total, sym_reduce(s.un_sol, bc.pp,
                                  masked_area(g, bc, BcKind::Pressure)));
  }
  TimeSeries q = subtract(traj.p1_series(), traj.p2_series());
  total = subtract(total,
                   scale(sym_reduce(q, q, wcell), 0.5 * mat.beta / mat.mu));
  return total;
}

VariationDirection zero_direction(const StructuredGrid& g, std::size_t steps,
                                  double dt) {
  VariationDirection d;
  d.du1 = constant_series(dt, steps, 0.0, g.num_faces());
  d.du2 = d.du1;
  d.dp1 = constant_series(dt, steps, 0.0, g.num_cells());
  d.dp2 = d.dp1;
  return d;
}

VariationDirection random_direction(const StructuredGrid& g, std::size_t steps,
                                    double dt, std::mt19937_64& rng) {
  VariationDirection d = zero_direction(g, steps, dt);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (TimeSeries* s : {&d.du1, &d.du2, &d.dp1, &d.dp2})
    for (auto& sample : s->samples)
      for (auto& v : sample) v = dist(rng);
  const double nrm = direction_norm(d);
  if (nrm > 0.0)
    for (TimeSeries* s : {&d.du1, &d.du2, &d.dp1, &d.dp2})
      *s = scale(*s, 1.0 / nrm);
  return d;
}

double direction_norm(const VariationDirection& d) {
  return std::max({max_abs(d.du1), max_abs(d.du2), max_abs(d.dp1), max_abs(d.dp2)});
}

Trajectory apply_direction(const Trajectory& traj, const VariationDirection& d,
                           double eps) {
  check_direction(traj, d);
  const auto& g = traj.grid;
  Trajectory out = traj;
  for (std::size_t k = 0; k < out.snapshots.size(); ++k) {
    auto& s = out.snapshots[k];
    auto u1 = g.flatten(s.u1);
    auto u2 = g.flatten(s.u2);
    for (std::size_t f = 0; f < u1.size(); ++f) {
      u1[f] += eps * d.du1.samples[k][f];
      u2[f] += eps * d.du2.samples[k][f];
    }
    s.u1 = g.unflatten(u1);
    s.u2 = g.unflatten(u2);
    for (std::size_t c = 0; c < s.p1.size(); ++c) {
      s.p1[c] += eps * d.dp1.samples[k][c];
      s.p2[c] += eps * d.dp2.samples[k][c];
    }
  }
  return out;
}

GateauxResult gateaux_variation(const Trajectory& traj, const DppProblem& prob,
                                const VariationDirection& d, double eps) {
  check_conforming(traj, prob);
  check_direction(traj, d);
  const auto& g = traj.grid;
  const Material& mat = prob.material;
  const auto& w = g.face_weights();
  const std::vector<double> wcell(g.num_cells(), g.cell_volume());
  const double bm = mat.beta / mat.mu;

  TimeSeries q = subtract(traj.p1_series(), traj.p2_series());
  TimeSeries assembled = constant_series(traj.dt, traj.steps(), 0.0, 1);
  for (int net : {0, 1}) {
    auto s = network_series(traj, prob, net);
    const NetworkBC& bc = net == 0 ? prob.bc1 : prob.bc2;
    const TimeSeries& du = net == 0 ? d.du1 : d.du2;
    const TimeSeries& dp = net == 0 ? d.dp1 : d.dp2;

    std::vector<double> wc(w);
    for (std::size_t f = 0; f < w.size(); ++f) wc[f] *= s.c[f];

    // faces: du against (g/phi)(u - u0) + 1*(mu K^-1 u + grad p - g b)
    assembled = add(assembled, convolve_reduce(du, subtract(s.u, s.u0), wc));
    TimeSeries body = add(mul(s.u, s.drag), subtract(s.grad_p, s.gb));
    assembled = add(assembled, sym_reduce(du, body, w));

    // cells: -dp against 1*(div u -+ (beta/mu)(p1 - p2))
    TimeSeries mass = add(s.div_u, scale(q, net == 0 ? bm : -bm));
    assembled = subtract(assembled, sym_reduce(dp, mass, wcell));

    // velocity part of the boundary: the half-cell gradient stencil carries
    // no data there, so the Green identity leaves the adjacent cell pressure
    const auto wu = masked_area(g, bc, BcKind::Velocity);
    assembled = subtract(assembled,
                         sym_reduce(boundary_from_faces(g, du), s.p_cell, wu));
    assembled = add(assembled, sym_reduce(bc.un, cell_series_trace(g, dp), wu));
  }

  GateauxResult res;
  res.assembled = std::move(assembled);

  if (eps <= 0.0) {
    double fields = 0.0;
    for (const auto& snap : traj.snapshots) {
      for (double v : g.flatten(snap.u1)) fields = std::max(fields, std::abs(v));
      for (double v : g.flatten(snap.u2)) fields = std::max(fields, std::abs(v));
      for (double v : snap.p1) fields = std::max(fields, std::abs(v));
      for (double v : snap.p2) fields = std::max(fields, std::abs(v));
    }
    // psi is quadratic, so the central difference has no truncation error;
    // a large step just dilutes rounding noise
    eps = 1e-3 * (1.0 + fields) / (1.0 + direction_norm(d));
  }
  TimeSeries plus = psi(apply_direction(traj, d, eps), prob);
  TimeSeries minus = psi(apply_direction(traj, d, -eps), prob);
  res.finite_difference = scale(subtract(plus, minus), 0.5 / eps);
  return res;
}

}  // namespace dpp
