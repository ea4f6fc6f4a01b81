#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "grid.hpp"

using namespace dpp;

TEST_CASE("1D grid counts and spacing") {
  auto g = StructuredGrid::make(1, {1.0}, {4});
  CHECK(g.hx() == doctest::Approx(0.25));
  CHECK(g.num_cells() == 4);
  CHECK(g.num_faces_x() == 5);
  CHECK(g.num_faces_y() == 0);
  CHECK(g.boundary_faces().size() == 2);
}

TEST_CASE("2D grid counts") {
  auto g = StructuredGrid::make(2, {1.0, 1.0}, {2, 2});
  CHECK(g.num_cells() == 4);
  CHECK(g.num_faces_x() == 6);
  CHECK(g.num_faces_y() == 6);
  CHECK(g.boundary_faces().size() == 8);
}

TEST_CASE("degenerate grid input rejected") {
  CHECK_THROWS_AS(StructuredGrid::make(1, {1.0}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(StructuredGrid::make(1, {-1.0}, {4}), std::invalid_argument);
  CHECK_THROWS_AS(StructuredGrid::make(3, {1.0, 1.0, 1.0}, {2, 2, 2}),
                  std::invalid_argument);
}

TEST_CASE("divergence of constant field is zero") {
  auto g = StructuredGrid::make(2, {1.0, 2.0}, {4, 3});
  auto u = g.make_face_field(3.7);
  auto d = divergence(g, u);
  for (double v : d) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("divergence exact for linear field") {
  auto g = StructuredGrid::make(1, {1.0}, {4});
  auto u = g.make_face_field();
  for (int i = 0; i <= 4; ++i) u.x[i] = i * g.hx();  // u(x)=x
  auto d = divergence(g, u);
  for (double v : d) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("divergence matches hand stencil on random 3-cell field") {
  auto g = StructuredGrid::make(1, {1.0}, {3});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto u = g.make_face_field();
  for (auto& v : u.x) v = dist(rng);
  auto d = divergence(g, u);
  for (int i = 0; i < 3; ++i)
    CHECK(d[i] == doctest::Approx((u.x[i + 1] - u.x[i]) / g.hx()).epsilon(1e-14));
}

TEST_CASE("gradient of constant field with matching boundary data is zero") {
  auto g = StructuredGrid::make(2, {1.0, 1.0}, {3, 3});
  auto p = g.make_cell_field(2.5);
  std::vector<double> bv(g.boundary_faces().size(), 2.5);
  auto grad = gradient(g, p, bv);
  for (double v : grad.x) CHECK(v == doctest::Approx(0.0));
  for (double v : grad.y) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("gradient exact for linear pressure") {
  auto g = StructuredGrid::make(1, {1.0}, {4});
  auto p = g.make_cell_field();
  for (int i = 0; i < 4; ++i) p[i] = (i + 0.5) * g.hx();  // p(x)=x at centers
  std::vector<double> bv = {0.0, 1.0};                    // x-low then x-high
  auto grad = gradient(g, p, bv);
  for (double v : grad.x) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gradient requires a value per boundary face") {
  auto g = StructuredGrid::make(1, {1.0}, {4});
  auto p = g.make_cell_field(1.0);
  CHECK_THROWS_AS(gradient(g, p, {0.0}), std::invalid_argument);
}

TEST_CASE("integrate_cells basics and linearity") {
  auto g = StructuredGrid::make(2, {1.0, 1.0}, {8, 8});
  CHECK(integrate_cells(g, g.make_cell_field(1.0)) == doctest::Approx(1.0));
  CHECK(integrate_cells(g, g.make_cell_field(0.0)) == doctest::Approx(0.0));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto f = g.make_cell_field(), h = g.make_cell_field(), lin = g.make_cell_field();
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = dist(rng);
    h[i] = dist(rng);
    lin[i] = 2.0 * f[i] - 3.0 * h[i];
  }
  CHECK(integrate_cells(g, lin) ==
        doctest::Approx(2.0 * integrate_cells(g, f) - 3.0 * integrate_cells(g, h))
            .epsilon(1e-13));
}

TEST_CASE("integrate_cells of x on unit interval: midpoint rule is exact here") {
  // midpoint sampling of a linear integrand integrates exactly
  auto g = StructuredGrid::make(1, {1.0}, {64});
  auto f = g.make_cell_field();
  for (int i = 0; i < 64; ++i) f[i] = (i + 0.5) * g.hx();
  CHECK(integrate_cells(g, f) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("integrate_faces constants and refinement to 1/3") {
  auto g = StructuredGrid::make(1, {1.0}, {8});
  CHECK(integrate_faces(g, g.make_face_field(1.0), g.make_face_field(1.0)) ==
        doctest::Approx(1.0));
  CHECK(integrate_faces(g, g.make_face_field(1.0), g.make_face_field(0.0)) ==
        doctest::Approx(0.0));

  // f = g = x face-sampled: trapezoidal quadrature of x^2 -> 1/3 at order 2.
  double prev_err = 0.0;
  for (int level = 0; level < 3; ++level) {
    int n = 8 << level;
    auto gr = StructuredGrid::make(1, {1.0}, {n});
    auto f = gr.make_face_field();
    for (int i = 0; i <= n; ++i) f.x[i] = i * gr.hx();
    double err = std::abs(integrate_faces(gr, f, f) - 1.0 / 3.0);
    if (level > 0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.1));
    prev_err = err;
  }
}

TEST_CASE("discrete adjointness on random interior fields") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto check_grid = [&](const StructuredGrid& g) {
    for (int trial = 0; trial < 20; ++trial) {
      auto p = g.make_cell_field();
      for (auto& v : p) v = dist(rng);
      auto u = g.make_face_field();
      for (auto& v : u.x) v = dist(rng);
      for (auto& v : u.y) v = dist(rng);
      for (const auto& bf : g.boundary_faces())
        (bf.axis == 0 ? u.x : u.y)[bf.face] = 0.0;  // no-flux boundary
      std::vector<double> bv(g.boundary_faces().size(), 0.0);
      double lhs = integrate_faces(g, u, gradient(g, p, bv)) +
                   integrate_cells(g, p, divergence(g, u));
      CHECK(std::abs(lhs) <= 1e-12);
    }
  };
  check_grid(StructuredGrid::make(1, {1.0}, {16}));
  check_grid(StructuredGrid::make(2, {1.0, 1.0}, {8, 6}));
}

TEST_CASE("Green identity with boundary terms is exact") {
  // integrate_faces(u, grad p) + integrate_cells(p, div u) = sum_b area*(u.n)*p_b
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto g = StructuredGrid::make(2, {1.0, 2.0}, {5, 7});
  auto p = g.make_cell_field();
  for (auto& v : p) v = dist(rng);
  auto u = g.make_face_field();
  for (auto& v : u.x) v = dist(rng);
  for (auto& v : u.y) v = dist(rng);
  std::vector<double> bv(g.boundary_faces().size());
  for (auto& v : bv) v = dist(rng);

  double lhs =
      integrate_faces(g, u, gradient(g, p, bv)) + integrate_cells(g, p, divergence(g, u));
  double rhs = 0.0;
  const auto& bfaces = g.boundary_faces();
  for (std::size_t k = 0; k < bfaces.size(); ++k) {
    const auto& bf = bfaces[k];
    double un = (bf.axis == 0 ? u.x : u.y)[bf.face] * bf.sign;
    rhs += bf.area * un * bv[k];
  }
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("face_average matches hand stencil") {
  auto g = StructuredGrid::make(1, {1.0}, {4});
  CellField c = {1.0, 2.0, 4.0, 8.0};
  auto f = face_average(g, c);
  CHECK(f.x[0] == doctest::Approx(1.0));
  CHECK(f.x[1] == doctest::Approx(1.5));
  CHECK(f.x[2] == doctest::Approx(3.0));
  CHECK(f.x[3] == doctest::Approx(6.0));
  CHECK(f.x[4] == doctest::Approx(8.0));
}

TEST_CASE("flatten/unflatten round trip") {
  auto g = StructuredGrid::make(2, {1.0, 1.0}, {3, 2});
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto u = g.make_face_field();
  for (auto& v : u.x) v = dist(rng);
  for (auto& v : u.y) v = dist(rng);
  auto flat = g.flatten(u);
  CHECK(flat.size() == g.num_faces());
  auto back = g.unflatten(flat);
  CHECK(back.x == u.x);
  CHECK(back.y == u.y);
}
