#include "energy.hpp"

#include <cmath>
#include <stdexcept>

namespace dpp {

namespace {

// gamma over the face-averaged porosity; dividing by the same mean used for
// seepage velocities keeps the kinetic-energy identity exact.
FaceField gamma_over_phi(const StructuredGrid& g, double gamma, const CellField& phi) {
  for (double v : phi)
    if (!(v > 0.0)) throw std::invalid_argument("porosity must be positive");
  FaceField f = face_average(g, phi);
  for (auto& v : f.x) v = gamma / v;
  for (auto& v : f.y) v = gamma / v;
  return f;
}

}  // namespace

TimeSeries energy(const Trajectory& diff, const Material& mat) {
  const auto& g = diff.grid;
  const auto c1 = gamma_over_phi(g, mat.gamma, mat.phi1);
  const auto c2 = gamma_over_phi(g, mat.gamma, mat.phi2);
  TimeSeries e;
  e.dt = diff.dt;
  e.samples.reserve(diff.snapshots.size());
  for (const auto& s : diff.snapshots)
    e.samples.push_back({0.5 * integrate_faces(g, c1, s.u1, s.u1) +
                         0.5 * integrate_faces(g, c2, s.u2, s.u2)});
  return e;
}

double kinetic_energy(const StructuredGrid& g, const StateSnapshot& s,
                      const Material& mat) {
  const auto c1 = gamma_over_phi(g, mat.gamma, mat.phi1);
  const auto c2 = gamma_over_phi(g, mat.gamma, mat.phi2);
  return 0.5 * integrate_faces(g, c1, s.u1, s.u1) +
         0.5 * integrate_faces(g, c2, s.u2, s.u2);
}

void seepage_velocities(const StructuredGrid& g, const StateSnapshot& s,
                        const Material& mat, FaceField* v1, FaceField* v2) {
  const auto f1 = gamma_over_phi(g, 1.0, mat.phi1);  // 1/phi at faces
  const auto f2 = gamma_over_phi(g, 1.0, mat.phi2);
  *v1 = s.u1;
  *v2 = s.u2;
  for (std::size_t i = 0; i < v1->x.size(); ++i) v1->x[i] *= f1.x[i];
  for (std::size_t i = 0; i < v1->y.size(); ++i) v1->y[i] *= f1.y[i];
  for (std::size_t i = 0; i < v2->x.size(); ++i) v2->x[i] *= f2.x[i];
  for (std::size_t i = 0; i < v2->y.size(); ++i) v2->y[i] *= f2.y[i];
}

EnergySeries energy_rates(const Trajectory& diff, const Material& mat) {
  const auto& g = diff.grid;
  const auto c1 = gamma_over_phi(g, mat.gamma, mat.phi1);
  const auto c2 = gamma_over_phi(g, mat.gamma, mat.phi2);
  const auto d1 = drag_coefficient(g, mat.mu, mat.k1);
  const auto d2 = drag_coefficient(g, mat.mu, mat.k2);

  EnergySeries es;
  es.E = energy(diff, mat);

  auto u1 = diff.u1_series();
  auto u2 = diff.u2_series();
  auto du1 = time_derivative(u1);
  auto du2 = time_derivative(u2);

  const std::size_t n = diff.steps();
  es.Edot_formula = constant_series(diff.dt, n, 0.0);
  es.Edot_dissipation = constant_series(diff.dt, n, 0.0);
  es.Eddot_formula = constant_series(diff.dt, n, 0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    const auto& s = diff.snapshots[k];
    FaceField w1dot = g.unflatten(du1.samples[k]);
    FaceField w2dot = g.unflatten(du2.samples[k]);
    es.Edot_formula.samples[k][0] = integrate_faces(g, c1, w1dot, s.u1) +
                                    integrate_faces(g, c2, w2dot, s.u2);
    es.Eddot_formula.samples[k][0] = 2.0 * integrate_faces(g, c1, w1dot, w1dot) +
                                     2.0 * integrate_faces(g, c2, w2dot, w2dot);
    double diss = -integrate_faces(g, d1, s.u1, s.u1) -
                  integrate_faces(g, d2, s.u2, s.u2);
    CellField q = s.p1;
    for (std::size_t c = 0; c < q.size(); ++c) q[c] -= s.p2[c];
    diss -= (mat.beta / mat.mu) * integrate_cells(g, q, q);
    es.Edot_dissipation.samples[k][0] = diss;
  }
  es.Edot_fd = time_derivative(es.E);
  es.Eddot_fd = time_derivative(es.Edot_fd);
  return es;
}

TimeSeries log_convexity_margin(const EnergySeries& es) {
  TimeSeries m = es.E;
  for (std::size_t k = 0; k < m.samples.size(); ++k) {
    const double e = es.E.scalar(k);
    const double ed = es.Edot_formula.scalar(k);
    const double edd = es.Eddot_formula.scalar(k);
    m.samples[k][0] = e * edd - ed * ed;
  }
  return m;
}

TimeSeries exponential_bound_margin(const EnergySeries& es, double t1) {
  const double dt = es.E.dt;
  const std::size_t k1 = static_cast<std::size_t>(std::lround(t1 / dt));
  if (k1 >= es.E.samples.size())
    throw std::invalid_argument("exponential bound: t1 outside the time range");
  const double e1 = es.E.scalar(k1);
  if (!(e1 > 0.0))
    throw std::invalid_argument("exponential bound: E(t1) must be positive");
  const double rate = es.Edot_formula.scalar(k1) / e1;
  TimeSeries m = es.E;
  for (std::size_t k = 0; k < m.samples.size(); ++k)
    m.samples[k][0] =
        k < k1 ? 0.0 : es.E.scalar(k) - e1 * std::exp(rate * (k - k1) * dt);
  return m;
}

UniquenessReport uniqueness_experiment(const DppProblem& problem, const FaceField& u01b,
                                       const FaceField& u02b, Scheme scheme,
                                       double tol) {
  auto ta = solve(problem, scheme);
  DppProblem pb = problem;
  pb.loads.u01 = u01b;
  pb.loads.u02 = u02b;
  auto tb = solve(pb, scheme);
  auto diff = difference_trajectory(ta, tb);

  UniquenessReport rep;
  auto es = energy_rates(diff, problem.material);
  rep.E = es.E;
  rep.log_margin = log_convexity_margin(es);
  rep.min_energy = rep.E.scalar(0);
  rep.max_energy = 0.0;
  for (const auto& s : rep.E.samples) {
    rep.min_energy = std::min(rep.min_energy, s[0]);
    rep.max_energy = std::max(rep.max_energy, s[0]);
  }
  rep.identical = rep.max_energy <= tol;

  rep.worst_log_margin = 0.0;
  for (const auto& s : rep.log_margin.samples)
    rep.worst_log_margin = std::min(rep.worst_log_margin, s[0]);

  if (!rep.identical) {
    rep.exp_margin = exponential_bound_margin(es, 0.0);
    rep.worst_exp_margin = 0.0;
    for (const auto& s : rep.exp_margin.samples)
      rep.worst_exp_margin = std::min(rep.worst_exp_margin, s[0]);
  } else {
    rep.exp_margin = constant_series(rep.E.dt, rep.E.steps(), 0.0);
  }

  const auto& g = problem.grid;
  for (const auto& s : diff.snapshots) {
    double m1 = 0.0, m2 = 0.0;
    for (double v : s.p1) m1 += v;
    for (double v : s.p2) m2 += v;
    rep.c_estimate_q1 = std::max(rep.c_estimate_q1, std::abs(m1 / g.num_cells()));
    rep.c_estimate_q2 = std::max(rep.c_estimate_q2, std::abs(m2 / g.num_cells()));
  }

  rep.pass = rep.worst_log_margin >= -tol && rep.worst_exp_margin >= -tol &&
             (rep.identical || rep.min_energy > 0.0);
  return rep;
}

}  // namespace dpp
