#include "runner.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "energy.hpp"
#include "manufactured.hpp"
#include "orders.hpp"
#include "reciprocity.hpp"
#include "variational.hpp"

namespace dpp {

namespace {

using nlohmann::json;

double traj_error(const Trajectory& a, const Trajectory& b) {
  auto d = difference_trajectory(a, b);
  double worst = 0.0;
  for (const TimeSeries& s :
       {d.u1_series(), d.u2_series(), d.p1_series(), d.p2_series()})
    worst = std::max(worst, max_abs(s));
  return worst;
}

std::string scheme_name(Scheme s) {
  return s == Scheme::CrankNicolson ? "crank-nicolson" : "backward-euler";
}

FaceField random_face_field(const StructuredGrid& g, std::mt19937_64& rng,
                            double amplitude) {
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  FaceField f = g.make_face_field();
  for (auto& v : f.x) v = dist(rng);
  for (auto& v : f.y) v = dist(rng);
  return f;
}

// smooth random trig loads; u02 = const - u01 keeps div(u01 + u02) = 0
LoadSet random_smooth_loads(const DppProblem& base, std::mt19937_64& rng) {
  const auto& g = base.grid;
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double two_pi = 2.0 * 3.14159265358979323846;
  auto pos = face_centers(g);
  LoadSet l = base.loads;

  for (int net : {0, 1}) {
    double c0 = dist(rng), c1 = dist(rng), c2 = dist(rng);
    double c3 = g.dimension() == 2 ? dist(rng) : 0.0;
    double a = dist(rng);
    TimeSeries& b = net == 0 ? l.b1 : l.b2;
    for (std::size_t k = 0; k < b.samples.size(); ++k) {
      const double t = b.dt * static_cast<double>(k);
      const double gt = (1.0 + a * t) * std::exp(-t);
      for (std::size_t f = 0; f < g.num_faces(); ++f) {
        const double x = pos[f][0], y = pos[f][1];
        b.samples[k][f] = gt * (c0 + c1 * std::cos(two_pi * x) +
                                c2 * std::sin(two_pi * x) +
                                c3 * std::cos(two_pi * y));
      }
    }
  }

  const double ax = dist(rng), ay = g.dimension() == 2 ? dist(rng) : 0.0;
  const double shift = dist(rng);
  FaceField u01 = g.make_face_field();
  for (std::size_t f = 0; f < g.num_faces_x(); ++f)
    u01.x[f] = ax * std::cos(two_pi * pos[f][0]);
  for (std::size_t f = 0; f < u01.y.size(); ++f)
    u01.y[f] = ay * std::sin(two_pi * pos[g.num_faces_x() + f][1]);
  FaceField u02 = u01;
  for (auto& v : u02.x) v = shift - v;
  for (auto& v : u02.y) v = -v;
  l.u01 = u01;
  l.u02 = u02;
  return l;
}

PropertyReport uniqueness_suite(const Scenario& sc, RunReport& rr) {
  PropertyReport pr;
  pr.name = "uniqueness";
  pr.tolerance = sc.tol_uniqueness;  // calibration constant c of the margin bound
  std::mt19937_64 rng(sc.seed ^ 0x9e3779b97f4a7c15ull);

  // tol = c (dt^p + h^2) scale(E), the scheme-order envelope of the margins
  const double p = sc.scheme == Scheme::CrankNicolson ? 2.0 : 1.0;
  const auto& g = sc.problem.grid;
  const double h = g.dimension() == 2 ? std::min(g.hx(), g.hy()) : g.hx();
  const double envelope =
      sc.tol_uniqueness * (std::pow(sc.problem.dt(), p) + h * h);

  json pairs = json::array();
  double worst = 0.0;
  bool pass = true;
  for (int pair = 0; pair < 5; ++pair) {
    FaceField u01b = random_face_field(sc.problem.grid, rng, 0.5);
    FaceField u02b = random_face_field(sc.problem.grid, rng, 0.5);
    auto rep = uniqueness_experiment(sc.problem, u01b, u02b, sc.scheme, 1.0);
    const double scale_e = std::max(rep.max_energy, 1e-300);
    const bool pair_pass = (rep.identical || rep.min_energy > 0.0) &&
                           rep.worst_log_margin >= -envelope * scale_e * scale_e &&
                           rep.worst_exp_margin >= -envelope * scale_e;
    pass = pass && pair_pass;
    worst = std::min(worst, std::min(rep.worst_log_margin / (scale_e * scale_e),
                                     rep.worst_exp_margin / scale_e));
    pairs.push_back({{"min_energy", rep.min_energy},
                     {"max_energy", rep.max_energy},
                     {"worst_log_margin", rep.worst_log_margin},
                     {"worst_exp_margin", rep.worst_exp_margin},
                     {"identical", rep.identical},
                     {"pass", pair_pass}});
    if (pair == 0) {
      // full rate diagnostics for the first pair's difference trajectory
      auto base = solve(sc.problem, sc.scheme);
      DppProblem other = sc.problem;
      other.loads.u01 = u01b;
      other.loads.u02 = u02b;
      auto diff = difference_trajectory(solve(other, sc.scheme), base);
      auto es = energy_rates(diff, sc.problem.material);
      std::vector<std::vector<double>> rows;
      for (std::size_t k = 0; k < es.E.samples.size(); ++k)
        rows.push_back({es.E.time(k), es.E.scalar(k), es.Edot_formula.scalar(k),
                        es.Eddot_formula.scalar(k), rep.log_margin.scalar(k),
                        rep.exp_margin.scalar(k)});
      rr.files["series/uniqueness.csv"] = csv_table(
          {"t", "E", "Edot", "Eddot", "log_margin", "exp_margin"}, rows);
    }
  }
  // identical-data pair: the velocity difference vanishes and the pressure
  // offset constant is zero whenever a pressure boundary pins it
  auto same = uniqueness_experiment(sc.problem, sc.problem.loads.u01,
                                    sc.problem.loads.u02, sc.scheme, 1.0);
  const bool has_pressure1 =
      std::count(sc.problem.bc1.kind.begin(), sc.problem.bc1.kind.end(),
                 BcKind::Pressure) > 0;
  const bool has_pressure2 =
      std::count(sc.problem.bc2.kind.begin(), sc.problem.bc2.kind.end(),
                 BcKind::Pressure) > 0;
  bool constant_ok = same.identical;
  if (has_pressure1) constant_ok = constant_ok && same.c_estimate_q1 <= 1e-8;
  if (has_pressure2) constant_ok = constant_ok && same.c_estimate_q2 <= 1e-8;
  pass = pass && constant_ok;

  pr.pass = pass;
  pr.value = worst;  // most negative normalized margin observed
  pr.details = {{"pairs", pairs},
                {"margin_envelope", envelope},
                {"identical_pair",
                 {{"identical", same.identical},
                  {"c_estimate_q1", same.c_estimate_q1},
                  {"c_estimate_q2", same.c_estimate_q2},
                  {"pass", constant_ok}}}};
  return pr;
}

PropertyReport reciprocity_suite(const Scenario& sc, RunReport& rr) {
  PropertyReport pr;
  pr.name = "reciprocity";
  pr.tolerance = sc.tol_reciprocity;
  std::mt19937_64 rng(sc.seed ^ 0xda3e39cb94b95bdbull);

  json pairs = json::array();
  std::vector<TimeSeries> residuals;
  double worst = 0.0;
  double identical_residual = 0.0;
  for (int pair = 0; pair < 3; ++pair) {
    DppProblem pa = sc.problem;
    pa.loads = random_smooth_loads(sc.problem, rng);
    DppProblem pb = sc.problem;
    pb.loads = random_smooth_loads(sc.problem, rng);
    auto ta = solve(pa, sc.scheme);
    auto tb = solve(pb, sc.scheme);
    auto res = reciprocity_residual(ta, pa, tb, pb);
    worst = std::max(worst, res.normalized);
    residuals.push_back(res.r);
    if (pair == 0) {
      auto same = reciprocity_residual(ta, pa, ta, pa);
      identical_residual = max_abs(same.r);
    }
    pairs.push_back({{"normalized", res.normalized},
                     {"max_functional", res.max_functional},
                     {"max_residual", max_abs(res.r)}});
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < residuals[0].samples.size(); ++k)
    rows.push_back({residuals[0].time(k), residuals[0].scalar(k),
                    residuals[1].scalar(k), residuals[2].scalar(k)});
  rr.files["series/reciprocity.csv"] =
      csv_table({"t", "r_pair1", "r_pair2", "r_pair3"}, rows);

  pr.value = worst;
  pr.pass = worst <= sc.tol_reciprocity && identical_residual == 0.0;
  pr.details = {{"pairs", pairs}, {"identical_loads_residual", identical_residual}};
  return pr;
}

PropertyReport variational_suite(const Scenario& sc, RunReport& rr) {
  PropertyReport pr;
  pr.name = "variational";
  pr.tolerance = sc.tol_variational;
  std::mt19937_64 rng(sc.seed ^ 0xc2b2ae3d27d4eb4full);

  auto traj = solve(sc.problem, sc.scheme);
  auto series = psi(traj, sc.problem);
  const double scale_ref = std::max(1.0, max_abs(series));

  double worst_variation = 0.0, worst_agreement = 0.0;
  json directions = json::array();
  TimeSeries worst_abs = constant_series(series.dt, series.steps(), 0.0, 1);
  for (int rep = 0; rep < 20; ++rep) {
    auto d = random_direction(sc.problem.grid, traj.steps(), traj.dt, rng);
    auto gv = gateaux_variation(traj, sc.problem, d);
    const double v = max_abs(gv.assembled);
    const double fd_ref = std::max(1.0, max_abs(gv.finite_difference));
    const double agree =
        max_abs(subtract(gv.assembled, gv.finite_difference)) / fd_ref;
    worst_variation = std::max(worst_variation, v);
    worst_agreement = std::max(worst_agreement, agree);
    for (std::size_t k = 0; k < worst_abs.samples.size(); ++k)
      worst_abs.samples[k][0] = std::max(worst_abs.samples[k][0],
                                         std::abs(gv.assembled.scalar(k)));
    directions.push_back({{"max_variation", v}, {"assembly_vs_fd", agree}});
  }

  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < series.samples.size(); ++k)
    rows.push_back({series.time(k), series.scalar(k), worst_abs.scalar(k)});
  rr.files["series/variational.csv"] =
      csv_table({"t", "psi", "max_abs_dpsi"}, rows);

  pr.value = worst_variation / scale_ref;
  pr.pass = pr.value <= sc.tol_variational && worst_agreement <= 1e-8;
  pr.details = {{"psi_at_T", series.scalar(series.steps())},
                {"psi_at_half_T", series.scalar(series.steps() / 2)},
                {"psi_scale", scale_ref},
                {"assembly_vs_fd_worst", worst_agreement},
                {"directions", directions}};
  return pr;
}

PropertyReport convergence_suite(const Scenario& sc, RunReport& rr) {
  PropertyReport pr;
  pr.name = "convergence";
  auto res = convergence_study(sc);
  const double target = sc.scheme == Scheme::CrankNicolson ? 2.0 : 1.0;
  const double band = sc.study_case == "smooth" ? 0.3 : 0.2;
  pr.value = res.order;
  pr.tolerance = band;
  pr.pass = std::abs(res.order - target) <= band;
  pr.details = {{"case", sc.study_case},
                {"target_order", target},
                {"spacings", res.spacings},
                {"errors", res.errors}};
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < res.errors.size(); ++i)
    rows.push_back({static_cast<double>(i), res.spacings[i], res.errors[i]});
  rr.files["series/convergence.csv"] = csv_table({"level", "spacing", "error"}, rows);
  return pr;
}

}  // namespace

ConvergenceResult convergence_study(const Scenario& sc) {
  if (sc.levels < 3)
    throw std::invalid_argument("convergence study needs at least 3 levels");
  if (sc.study_case != "decay" && sc.study_case != "smooth")
    throw std::invalid_argument("convergence study needs case 'decay' or 'smooth'");

  ConvergenceResult out;
  for (int level = 0; level < sc.levels; ++level) {
    const int factor = 1 << level;
    ManufacturedCase mc;
    double spacing;
    if (sc.study_case == "decay") {
      DecayParams prm;
      prm.a01 = 1.0;
      prm.a02 = 0.5;
      prm.k2 = 2.0;
      const int steps = sc.problem.steps * factor;
      mc = decay_case(sc.problem.grid, prm, sc.problem.T, steps);
      spacing = sc.problem.T / steps;
    } else {
      const int cells = sc.problem.grid.nx() * factor;
      const int steps = sc.problem.steps * factor;
      mc = smooth_case(cells, SmoothParams{}, sc.problem.T, steps);
      spacing = 1.0 / cells;
    }
    auto traj = solve(mc.problem, sc.scheme);
    out.spacings.push_back(spacing);
    out.errors.push_back(traj_error(traj, mc.reference));
  }
  out.order = fit_order(out.spacings, out.errors);
  return out;
}

RunReport run_scenario(const Scenario& sc) {
  RunReport rr;
  json suites = json::array();
  bool all_pass = true;
  std::string error;
  int error_code = 0;

  try {
    for (Suite s : sc.suites) {
      PropertyReport pr;
      switch (s) {
        case Suite::Uniqueness: pr = uniqueness_suite(sc, rr); break;
        case Suite::Reciprocity: pr = reciprocity_suite(sc, rr); break;
        case Suite::Variational: pr = variational_suite(sc, rr); break;
        case Suite::Convergence: pr = convergence_suite(sc, rr); break;
      }
      all_pass = all_pass && pr.pass;
      suites.push_back(to_json(pr));
    }

    if (sc.write_fields) {
      auto traj = solve(sc.problem, sc.scheme);
      std::vector<std::size_t> indices;
      if (sc.field_times.empty()) {
        indices.push_back(traj.steps());
      } else {
        for (double t : sc.field_times) {
          double k = std::round(t / traj.dt);
          k = std::min(std::max(k, 0.0), static_cast<double>(traj.steps()));
          indices.push_back(static_cast<std::size_t>(k));
        }
      }
      for (std::size_t k : indices)
        rr.files["fields/state_" + std::to_string(k) + ".vtk"] =
            vtk_snapshot(sc.problem.grid, traj.snapshots[k]);
    }
  } catch (const NullspaceError& e) {
    error = std::string("nullspace error: ") + e.what();
    error_code = 3;
  } catch (const NumericalError& e) {
    error = std::string("numerical error: ") + e.what();
    error_code = 3;
  } catch (const std::invalid_argument& e) {
    error = std::string("invalid scenario: ") + e.what();
    error_code = 2;
  }

  json report = {{"name", sc.name},
                 {"version", kVersion},
                 {"scheme", scheme_name(sc.scheme)},
                 {"seed", sc.seed},
                 {"scenario", sc.echo},
                 {"suites", suites},
                 {"pass", error.empty() && all_pass}};
  if (!error.empty()) report["error"] = error;
  rr.report = report;
  rr.exit_code = !error.empty() ? error_code : (all_pass ? 0 : 1);
  rr.files["report.json"] = dump_json(rr.report);
  return rr;
}

}  // namespace dpp
