#include "solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>

namespace dpp {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

double theta_of(Scheme s) { return s == Scheme::BackwardEuler ? 1.0 : 0.5; }

/// Shared assembly context for the step and initialization systems.
struct Assembly {
  const DppProblem& prob;
  const StructuredGrid& g;
  std::size_t nf, nfx, nc, nb;

  std::vector<int> bindex;            // flat face -> boundary index or -1
  std::vector<std::size_t> bflat;     // boundary index -> flat face
  std::vector<double> gphi1, gphi2;   // gamma/phi at faces
  std::vector<double> drag1, drag2;   // mu/K at faces
  bool hp1 = false, hp2 = false;      // any pressure BC per network

  // multiplier slots: joint (beta>0, no pressure BC anywhere) or per network
  int n_mult = 0;
  bool joint_mult = false;
  int mult_net[2] = {-1, -1};

  explicit Assembly(const DppProblem& p) : prob(p), g(p.grid) {
    nf = g.num_faces();
    nfx = g.num_faces_x();
    nc = g.num_cells();
    const auto& bfaces = g.boundary_faces();
    nb = bfaces.size();
    bindex.assign(nf, -1);
    bflat.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      bflat[b] = bfaces[b].axis == 0 ? bfaces[b].face : nfx + bfaces[b].face;
      bindex[bflat[b]] = static_cast<int>(b);
    }

    // gamma over face-averaged porosity (the convention shared with the
    // energy diagnostics, keeping discrete identities exact)
    gphi1 = g.flatten(face_average(g, p.material.phi1));
    gphi2 = g.flatten(face_average(g, p.material.phi2));
    for (auto& v : gphi1) v = p.material.gamma / v;
    for (auto& v : gphi2) v = p.material.gamma / v;
    drag1 = g.flatten(drag_coefficient(g, p.material.mu, p.material.k1));
    drag2 = g.flatten(drag_coefficient(g, p.material.mu, p.material.k2));

    for (auto k : p.bc1.kind) hp1 = hp1 || k == BcKind::Pressure;
    for (auto k : p.bc2.kind) hp2 = hp2 || k == BcKind::Pressure;

    if (p.material.beta > 0.0) {
      if (!hp1 && !hp2) {
        if (p.pin == PressurePin::None)
          throw NullspaceError("pressure fields undetermined: no pressure boundary and pinning disabled");
        joint_mult = true;
        n_mult = 1;
      }
    } else {
      for (int net = 0; net < 2; ++net) {
        const bool hp = net == 0 ? hp1 : hp2;
        if (!hp) {
          if (p.pin == PressurePin::None)
            throw NullspaceError("pressure fields undetermined: no pressure boundary and pinning disabled");
          mult_net[net] = n_mult++;
        }
      }
    }
  }

  std::size_t iu(int net, std::size_t f) const { return net * nf + f; }
  std::size_t ip(int net, std::size_t c) const { return 2 * nf + net * nc + c; }
  std::size_t im(int m) const { return 2 * nf + 2 * nc + static_cast<std::size_t>(m); }
  std::size_t size() const { return 2 * nf + 2 * nc + n_mult; }

  const NetworkBC& bc(int net) const { return net == 0 ? prob.bc1 : prob.bc2; }
  const std::vector<double>& gphi(int net) const { return net == 0 ? gphi1 : gphi2; }
  const std::vector<double>& drag(int net) const { return net == 0 ? drag1 : drag2; }

  bool is_velocity_face(int net, std::size_t f) const {
    return bindex[f] >= 0 && bc(net).kind[bindex[f]] == BcKind::Velocity;
  }

  /// Gradient stencil of the momentum row of flat face f, scaled by `scale`:
  /// cell-pressure coefficients into `out`, and the multiplier applied to the
  /// prescribed boundary pressure into *bp_coeff (0 for interior faces).
  void gradient_row(std::size_t f, double scale, int net,
                    std::vector<Triplet>& out, double* bp_coeff) const {
    *bp_coeff = 0.0;
    const std::size_t row = iu(net, f);
    if (bindex[f] >= 0) {
      const auto& bf = g.boundary_faces()[bindex[f]];
      const double h = bf.axis == 0 ? g.hx() : g.hy();
      out.emplace_back(row, ip(net, bf.cell), -scale * bf.sign / (0.5 * h));
      *bp_coeff = scale * bf.sign / (0.5 * h);
      return;
    }
    if (f < nfx) {
      const int i = static_cast<int>(f % (g.nx() + 1));
      const int j = static_cast<int>(f / (g.nx() + 1));
      out.emplace_back(row, ip(net, g.cell_index(i, j)), scale / g.hx());
      out.emplace_back(row, ip(net, g.cell_index(i - 1, j)), -scale / g.hx());
    } else {
      const std::size_t fy = f - nfx;
      const int i = static_cast<int>(fy % g.nx());
      const int j = static_cast<int>(fy / g.nx());
      out.emplace_back(row, ip(net, g.cell_index(i, j)), scale / g.hy());
      out.emplace_back(row, ip(net, g.cell_index(i, j - 1)), -scale / g.hy());
    }
  }

  /// Divergence coefficients of cell c applied to network `net` velocities,
  /// scaled, emitted into the given matrix row.
  void divergence_row(std::size_t row, std::size_t c, int net, double scale,
                      std::vector<Triplet>& out) const {
    const int i = static_cast<int>(c % g.nx());
    const int j = static_cast<int>(c / g.nx());
    out.emplace_back(row, iu(net, g.face_x_index(i + 1, j)), scale / g.hx());
    out.emplace_back(row, iu(net, g.face_x_index(i, j)), -scale / g.hx());
    if (g.dimension() == 2) {
      out.emplace_back(row, iu(net, nfx + g.face_y_index(i, j + 1)), scale / g.hy());
      out.emplace_back(row, iu(net, nfx + g.face_y_index(i, j)), -scale / g.hy());
    }
  }
};

struct Factored {
  SpMat A;
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;

  void factor(std::size_t n, std::vector<Triplet>& trips) {
    A.resize(static_cast<int>(n), static_cast<int>(n));
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
      throw NumericalError("sparse factorization failed (singular system?)");
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs, double* rel_residual) const {
    Eigen::VectorXd x = lu.solve(rhs);
    const double bn = std::max(rhs.norm(), 1e-300);
    *rel_residual = (A * x - rhs).norm() / bn;
    if (!(*rel_residual <= 1e-10))
      throw NumericalError("linear step residual above tolerance");
    return x;
  }
};

class Stepper {
 public:
  Stepper(const DppProblem& prob, Scheme scheme)
      : asm_(prob), theta_(theta_of(scheme)), dt_(prob.dt()) {
    build_step_matrix();
  }

  /// Snapshot 0: prescribed u0 plus a consistent initial pressure obtained
  /// from the time-differentiated mass constraints.
  StateSnapshot initial_state(LinearSystemStats* stats) {
    const auto& p = asm_.prob;
    const auto& g = asm_.g;
    Factored init;
    std::vector<Triplet> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(asm_.size());

    const std::vector<double> u01 = g.flatten(p.loads.u01);
    const std::vector<double> u02 = g.flatten(p.loads.u02);
    const std::vector<double>* u0[2] = {&u01, &u02};

    for (int net = 0; net < 2; ++net) {
      const auto& bc = asm_.bc(net);
      for (std::size_t f = 0; f < asm_.nf; ++f) {
        const std::size_t row = asm_.iu(net, f);
        if (asm_.is_velocity_face(net, f)) {
          trips.emplace_back(row, row, 1.0);
          const int b = asm_.bindex[f];
          rhs[row] = g.boundary_faces()[b].sign * bc_rate0(bc.un, b);
        } else {
          trips.emplace_back(row, row, asm_.gphi(net)[f]);
          double bp;
          asm_.gradient_row(f, 1.0, net, trips, &bp);
          rhs[row] = p.material.gamma * (net == 0 ? p.loads.b1 : p.loads.b2).samples[0][f] -
                     asm_.drag(net)[f] * (*u0[net])[f];
          if (bp != 0.0) rhs[row] -= bp * bc.pp.samples[0][asm_.bindex[f]];
        }
      }
    }

    const double beta = p.material.beta;
    if (beta > 0.0) {
      CellField d1 = divergence(g, p.loads.u01);
      CellField d2 = divergence(g, p.loads.u02);
      for (std::size_t c = 0; c < asm_.nc; ++c) {
        asm_.divergence_row(asm_.ip(0, c), c, 0, 1.0, trips);
        asm_.divergence_row(asm_.ip(0, c), c, 1, 1.0, trips);
        trips.emplace_back(asm_.ip(1, c), asm_.ip(0, c), 1.0);
        trips.emplace_back(asm_.ip(1, c), asm_.ip(1, c), -1.0);
        rhs[asm_.ip(1, c)] = 0.5 * (p.material.mu / beta) * (d2[c] - d1[c]);
      }
      if (asm_.joint_mult) {
        for (std::size_t c = 0; c < asm_.nc; ++c) {
          trips.emplace_back(asm_.ip(0, c), asm_.im(0), 1.0);
          trips.emplace_back(asm_.im(0), asm_.ip(0, c), 1.0);
          trips.emplace_back(asm_.im(0), asm_.ip(1, c), 1.0);
        }
      }
    } else {
      for (int net = 0; net < 2; ++net)
        for (std::size_t c = 0; c < asm_.nc; ++c)
          asm_.divergence_row(asm_.ip(net, c), c, net, 1.0, trips);
      for (int net = 0; net < 2; ++net)
        if (asm_.mult_net[net] >= 0) {
          const std::size_t m = asm_.im(asm_.mult_net[net]);
          for (std::size_t c = 0; c < asm_.nc; ++c) {
            trips.emplace_back(asm_.ip(net, c), m, 1.0);
            trips.emplace_back(m, asm_.ip(net, c), 1.0);
          }
        }
    }

    init.factor(asm_.size(), trips);
    double rel = 0.0;
    Eigen::VectorXd x = init.solve(rhs, &rel);
    if (stats) {
      stats->step_residuals.push_back(rel);
      stats->max_residual = std::max(stats->max_residual, rel);
    }

    StateSnapshot s;
    s.t = 0.0;
    s.u1 = p.loads.u01;
    s.u2 = p.loads.u02;
    s.p1.assign(asm_.nc, 0.0);
    s.p2.assign(asm_.nc, 0.0);
    for (std::size_t c = 0; c < asm_.nc; ++c) {
      s.p1[c] = x[asm_.ip(0, c)];
      s.p2[c] = x[asm_.ip(1, c)];
    }
    check_compatibility(stats);
    return s;
  }

  StateSnapshot advance(const StateSnapshot& state, int k, LinearSystemStats* stats) {
    const auto& p = asm_.prob;
    const auto& g = asm_.g;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(asm_.size());

    const FaceField* u_old[2] = {&state.u1, &state.u2};
    const CellField* p_old[2] = {&state.p1, &state.p2};
    const TimeSeries* body[2] = {&p.loads.b1, &p.loads.b2};

    for (int net = 0; net < 2; ++net) {
      const auto& bc = asm_.bc(net);
      std::vector<double> uold = g.flatten(*u_old[net]);
      std::vector<double> gpold;
      if (theta_ < 1.0) {
        std::vector<std::optional<double>> bv(asm_.nb);
        for (std::size_t b = 0; b < asm_.nb; ++b)
          if (bc.kind[b] == BcKind::Pressure) bv[b] = bc.pp.samples[k][b];
        gpold = g.flatten(gradient_partial(g, *p_old[net], bv));
      }
      for (std::size_t f = 0; f < asm_.nf; ++f) {
        const std::size_t row = asm_.iu(net, f);
        if (asm_.is_velocity_face(net, f)) {
          const int b = asm_.bindex[f];
          rhs[row] = g.boundary_faces()[b].sign * bc.un.samples[k + 1][b];
          continue;
        }
        double v = asm_.gphi(net)[f] * uold[f];
        v -= dt_ * (1.0 - theta_) * asm_.drag(net)[f] * uold[f];
        if (theta_ < 1.0) v -= dt_ * (1.0 - theta_) * gpold[f];
        v += dt_ * p.material.gamma *
             (theta_ * body[net]->samples[k + 1][f] +
              (1.0 - theta_) * body[net]->samples[k][f]);
        if (asm_.bindex[f] >= 0)  // pressure-BC face: prescribed trace at k+1
          v -= bp_coeff_[net][asm_.bindex[f]] * bc.pp.samples[k + 1][asm_.bindex[f]];
        rhs[row] = v;
      }
    }

    double rel = 0.0;
    Eigen::VectorXd x = factored_.solve(rhs, &rel);
    if (stats) {
      stats->step_residuals.push_back(rel);
      stats->max_residual = std::max(stats->max_residual, rel);
    }

    StateSnapshot s;
    s.t = state.t + dt_;
    s.u1 = g.make_face_field();
    s.u2 = g.make_face_field();
    std::vector<double> flat(asm_.nf);
    for (std::size_t f = 0; f < asm_.nf; ++f) flat[f] = x[asm_.iu(0, f)];
    s.u1 = g.unflatten(flat);
    for (std::size_t f = 0; f < asm_.nf; ++f) flat[f] = x[asm_.iu(1, f)];
    s.u2 = g.unflatten(flat);
    s.p1.resize(asm_.nc);
    s.p2.resize(asm_.nc);
    for (std::size_t c = 0; c < asm_.nc; ++c) {
      s.p1[c] = x[asm_.ip(0, c)];
      s.p2[c] = x[asm_.ip(1, c)];
    }
    return s;
  }

 private:
  Assembly asm_;
  double theta_, dt_;
  Factored factored_;
  std::vector<double> bp_coeff_[2];  // per boundary face: dt*theta*sign/(h/2)

  /// d/dt of a prescribed boundary series at t=0, second order when possible.
  static double bc_rate0(const TimeSeries& s, int b) {
    const double dt = s.dt;
    if (s.samples.size() >= 3)
      return (-3.0 * s.samples[0][b] + 4.0 * s.samples[1][b] - s.samples[2][b]) /
             (2.0 * dt);
    return (s.samples[1][b] - s.samples[0][b]) / dt;
  }

  void build_step_matrix() {
    const auto& p = asm_.prob;
    std::vector<Triplet> trips;
    bp_coeff_[0].assign(asm_.nb, 0.0);
    bp_coeff_[1].assign(asm_.nb, 0.0);

    for (int net = 0; net < 2; ++net) {
      for (std::size_t f = 0; f < asm_.nf; ++f) {
        const std::size_t row = asm_.iu(net, f);
        if (asm_.is_velocity_face(net, f)) {
          trips.emplace_back(row, row, 1.0);
          continue;
        }
        trips.emplace_back(row, row,
                           asm_.gphi(net)[f] + dt_ * theta_ * asm_.drag(net)[f]);
        double bp;
        asm_.gradient_row(f, dt_ * theta_, net, trips, &bp);
        if (asm_.bindex[f] >= 0) bp_coeff_[net][asm_.bindex[f]] = bp;
      }
    }

    const double ex = p.material.beta / p.material.mu;
    for (std::size_t c = 0; c < asm_.nc; ++c) {
      asm_.divergence_row(asm_.ip(0, c), c, 0, 1.0, trips);
      trips.emplace_back(asm_.ip(0, c), asm_.ip(0, c), ex);
      trips.emplace_back(asm_.ip(0, c), asm_.ip(1, c), -ex);
      asm_.divergence_row(asm_.ip(1, c), c, 1, 1.0, trips);
      trips.emplace_back(asm_.ip(1, c), asm_.ip(0, c), -ex);
      trips.emplace_back(asm_.ip(1, c), asm_.ip(1, c), ex);
    }

    if (asm_.joint_mult) {
      for (int net = 0; net < 2; ++net)
        for (std::size_t c = 0; c < asm_.nc; ++c) {
          trips.emplace_back(asm_.ip(net, c), asm_.im(0), 1.0);
          trips.emplace_back(asm_.im(0), asm_.ip(net, c), 1.0);
        }
    }
    for (int net = 0; net < 2; ++net)
      if (asm_.mult_net[net] >= 0) {
        const std::size_t m = asm_.im(asm_.mult_net[net]);
        for (std::size_t c = 0; c < asm_.nc; ++c) {
          trips.emplace_back(asm_.ip(net, c), m, 1.0);
          trips.emplace_back(m, asm_.ip(net, c), 1.0);
        }
      }

    factored_.factor(asm_.size(), trips);
  }

  void check_compatibility(LinearSystemStats* stats) {
    if (!stats) return;
    const auto& g = asm_.g;
    const auto& bfaces = g.boundary_faces();
    for (int net = 0; net < 2; ++net) {
      const auto& bc = asm_.bc(net);
      const FaceField& u0 = net == 0 ? asm_.prob.loads.u01 : asm_.prob.loads.u02;
      for (std::size_t b = 0; b < asm_.nb; ++b) {
        if (bc.kind[b] != BcKind::Velocity) continue;
        const auto& bf = bfaces[b];
        const double uf = (bf.axis == 0 ? u0.x : u0.y)[bf.face];
        const double want = bf.sign * bc.un.samples[0][b];
        if (std::abs(uf - want) > 1e-10 * (1.0 + std::abs(want))) {
          stats->warnings.push_back(
              "initial velocity incompatible with t=0 boundary data (network " +
              std::to_string(net + 1) + ")");
          break;
        }
      }
    }
  }
};

}  // namespace

StateSnapshot step(const DppProblem& problem, const StateSnapshot& state, Scheme scheme) {
  auto violations = validate(problem);
  if (!violations.empty())
    throw std::invalid_argument("invalid problem: " + violations.front());
  Stepper st(problem, scheme);
  const int k = static_cast<int>(std::lround(state.t / problem.dt()));
  return st.advance(state, k, nullptr);
}

Trajectory solve(const DppProblem& problem, Scheme scheme, LinearSystemStats* stats) {
  auto violations = validate(problem);
  if (!violations.empty())
    throw std::invalid_argument("invalid problem: " + violations.front());
  Stepper st(problem, scheme);
  Trajectory traj;
  traj.grid = problem.grid;
  traj.dt = problem.dt();
  traj.snapshots.reserve(problem.steps + 1);
  traj.snapshots.push_back(st.initial_state(stats));
  for (int k = 0; k < problem.steps; ++k)
    traj.snapshots.push_back(st.advance(traj.snapshots.back(), k, stats));
  return traj;
}

}  // namespace dpp
