#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "manufactured.hpp"
#include "model.hpp"
#include "orders.hpp"

using namespace dpp;

TEST_CASE("validate accepts a well-formed problem") {
  auto g = StructuredGrid::make(1, {1.0}, {8});
  DecayParams prm;
  prm.phi1 = 0.4;
  auto mc = decay_case(g, prm, 1.0, 10);
  CHECK(validate(mc.problem).empty());
}

TEST_CASE("validate flags porosity out of range") {
  auto g = StructuredGrid::make(1, {1.0}, {8});
  auto mc = decay_case(g, DecayParams{}, 1.0, 10);
  mc.problem.material.phi1[3] = 1.5;
  auto v = validate(mc.problem);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "porosity out of (0,1)");
}

TEST_CASE("validate flags bad scalars and permeability") {
  auto g = StructuredGrid::make(1, {1.0}, {8});
  auto mc = decay_case(g, DecayParams{}, 1.0, 10);
  mc.problem.material.gamma = -1.0;
  mc.problem.material.k2.xx[0] = 0.0;
  auto v = validate(mc.problem);
  CHECK(v.size() == 2);
}

TEST_CASE("validate flags inconsistent boundary data") {
  auto g = StructuredGrid::make(1, {1.0}, {8});
  auto mc = decay_case(g, DecayParams{}, 1.0, 10);
  mc.problem.bc1.kind.pop_back();
  mc.problem.bc2.pp.samples.pop_back();
  auto v = validate(mc.problem);
  CHECK(v.size() == 2);
}

TEST_CASE("drag coefficient uses mean reciprocal permeability") {
  auto g = StructuredGrid::make(1, {1.0}, {4});
  DiagPerm k{{1.0, 2.0, 4.0, 8.0}, {}};
  auto d = drag_coefficient(g, 3.0, k);
  CHECK(d.x[0] == doctest::Approx(3.0 / 1.0));
  CHECK(d.x[1] == doctest::Approx(3.0 * 0.5 * (1.0 + 0.5)));
  CHECK(d.x[2] == doctest::Approx(3.0 * 0.5 * (0.5 + 0.25)));
  CHECK(d.x[4] == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("rest case has exactly zero residuals") {
  auto g = StructuredGrid::make(2, {1.0, 1.0}, {4, 4});
  auto mc = rest_case(g, 1.0, 8);
  CHECK(validate(mc.problem).empty());
  auto r = pde_residuals(mc.reference, mc.problem);
  CHECK(face_residual_norm(g, r.mom1, false) == 0.0);
  CHECK(face_residual_norm(g, r.mom2, false) == 0.0);
  CHECK(cell_residual_norm(g, r.mass1) == 0.0);
  CHECK(cell_residual_norm(g, r.mass2) == 0.0);
}

TEST_CASE("decay case: zero forcing reproduced, residual vanishes at order 2 in time") {
  auto g = StructuredGrid::make(1, {1.0}, {16});
  DecayParams prm;
  prm.gamma = 2.0;
  prm.mu = 0.5;
  prm.beta = 0.3;
  prm.phi1 = 0.25;
  prm.phi2 = 0.5;
  prm.k1 = 2.0;
  prm.k2 = 1.0;
  prm.a01 = 1.0;
  prm.a02 = -0.5;
  CHECK(max_abs(decay_case(g, prm, 1.0, 8).problem.loads.b1) == 0.0);

  std::vector<double> dts, errs;
  for (int level = 0; level < 4; ++level) {
    int n = 8 << level;
    auto mc = decay_case(g, prm, 1.0, n);
    auto r = pde_residuals(mc.reference, mc.problem);
    CHECK(cell_residual_norm(g, r.mass1) == 0.0);
    CHECK(cell_residual_norm(g, r.mass2) == 0.0);
    double err = std::max(face_residual_norm(g, r.mom1, false),
                          face_residual_norm(g, r.mom2, false));
    dts.push_back(1.0 / n);
    errs.push_back(err);
  }
  CHECK(fit_order(dts, errs) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("smooth case: residuals converge under proportional refinement") {
  std::vector<double> hs, interior_errs, mass_errs, full_errs;
  for (int level = 0; level < 3; ++level) {
    int n = 16 << level;
    auto mc = smooth_case(n, SmoothParams{}, 0.5, n);
    CHECK(validate(mc.problem).empty());
    auto r = pde_residuals(mc.reference, mc.problem);
    const auto& g = mc.problem.grid;
    interior_errs.push_back(std::max(face_residual_norm(g, r.mom1, true),
                                     face_residual_norm(g, r.mom2, true)));
    full_errs.push_back(std::max(face_residual_norm(g, r.mom1, false),
                                 face_residual_norm(g, r.mom2, false)));
    mass_errs.push_back(
        std::max(cell_residual_norm(g, r.mass1), cell_residual_norm(g, r.mass2)));
    hs.push_back(1.0 / n);
  }
  CHECK(fit_order(hs, interior_errs) >= 1.8);
  CHECK(fit_order(hs, mass_errs) >= 1.8);
  // boundary closure is first order pointwise; the norm still vanishes
  CHECK(fit_order(hs, full_errs) >= 0.8);
}

TEST_CASE("difference of a trajectory with itself is zero") {
  auto g = StructuredGrid::make(1, {1.0}, {8});
  auto mc = smooth_case(8, SmoothParams{}, 0.5, 8);
  auto d = difference_trajectory(mc.reference, mc.reference);
  CHECK(max_abs(d.u1_series()) == 0.0);
  CHECK(max_abs(d.p2_series()) == 0.0);

  auto other = decay_case(g, DecayParams{}, 0.5, 4);
  CHECK_THROWS_AS(difference_trajectory(mc.reference, other.reference),
                  std::invalid_argument);
}
