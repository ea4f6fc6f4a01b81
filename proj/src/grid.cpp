#include "grid.hpp"

#include <stdexcept>

namespace dpp {

StructuredGrid StructuredGrid::make(int dimension, const std::vector<double>& extent,
                                    const std::vector<int>& cells) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("grid: dimension must be 1 or 2");
  if (extent.size() != static_cast<std::size_t>(dimension) ||
      cells.size() != static_cast<std::size_t>(dimension))
    throw std::invalid_argument("grid: extent/cells size must match dimension");
  for (double e : extent)
    if (!(e > 0.0)) throw std::invalid_argument("grid: extents must be positive");
  for (int c : cells)
    if (c <= 0) throw std::invalid_argument("grid: cell counts must be positive");

  StructuredGrid g;
  g.dim_ = dimension;
  g.nx_ = cells[0];
  g.lx_ = extent[0];
  g.hx_ = g.lx_ / g.nx_;
  if (dimension == 2) {
    g.ny_ = cells[1];
    g.ly_ = extent[1];
    g.hy_ = g.ly_ / g.ny_;
  } else {
    g.ny_ = 1;
    g.ly_ = 1.0;
    g.hy_ = 1.0;
  }
  g.vol_ = g.hx_ * g.hy_;

  // Boundary faces, fixed order: x-low, x-high, then (2D) y-low, y-high.
  for (int j = 0; j < g.ny_; ++j)
    g.boundary_.push_back({0, g.face_x_index(0, j), -1, g.cell_index(0, j),
                           g.cell_index(g.nx_ > 1 ? 1 : 0, j),
                           dimension == 2 ? g.hy_ : 1.0});
  for (int j = 0; j < g.ny_; ++j)
    g.boundary_.push_back({0, g.face_x_index(g.nx_, j), +1, g.cell_index(g.nx_ - 1, j),
                           g.cell_index(g.nx_ > 1 ? g.nx_ - 2 : g.nx_ - 1, j),
                           dimension == 2 ? g.hy_ : 1.0});
  if (dimension == 2) {
    for (int i = 0; i < g.nx_; ++i)
      g.boundary_.push_back({1, g.face_y_index(i, 0), -1, g.cell_index(i, 0),
                             g.cell_index(i, g.ny_ > 1 ? 1 : 0), g.hx_});
    for (int i = 0; i < g.nx_; ++i)
      g.boundary_.push_back({1, g.face_y_index(i, g.ny_), +1, g.cell_index(i, g.ny_ - 1),
                             g.cell_index(i, g.ny_ > 1 ? g.ny_ - 2 : g.ny_ - 1), g.hx_});
  }

  g.face_w_.assign(g.num_faces(), g.vol_);
  for (int j = 0; j < g.ny_; ++j) {
    g.face_w_[g.face_x_index(0, j)] = 0.5 * g.vol_;
    g.face_w_[g.face_x_index(g.nx_, j)] = 0.5 * g.vol_;
  }
  if (dimension == 2) {
    const std::size_t off = g.num_faces_x();
    for (int i = 0; i < g.nx_; ++i) {
      g.face_w_[off + g.face_y_index(i, 0)] = 0.5 * g.vol_;
      g.face_w_[off + g.face_y_index(i, g.ny_)] = 0.5 * g.vol_;
    }
  }
  return g;
}

FaceField StructuredGrid::make_face_field(double v) const {
  FaceField f;
  f.x.assign(num_faces_x(), v);
  f.y.assign(num_faces_y(), v);
  return f;
}

std::vector<double> StructuredGrid::flatten(const FaceField& f) const {
  std::vector<double> out;
  out.reserve(num_faces());
  out.insert(out.end(), f.x.begin(), f.x.end());
  out.insert(out.end(), f.y.begin(), f.y.end());
  return out;
}

FaceField StructuredGrid::unflatten(const std::vector<double>& v) const {
  if (v.size() != num_faces()) throw std::invalid_argument("unflatten: size mismatch");
  FaceField f;
  f.x.assign(v.begin(), v.begin() + num_faces_x());
  f.y.assign(v.begin() + num_faces_x(), v.end());
  return f;
}

CellField divergence(const StructuredGrid& g, const FaceField& u) {
  if (!g.face_sized(u)) throw std::invalid_argument("divergence: field/grid mismatch");
  CellField d = g.make_cell_field();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      double v = (u.x[g.face_x_index(i + 1, j)] - u.x[g.face_x_index(i, j)]) / g.hx();
      if (g.dimension() == 2)
        v += (u.y[g.face_y_index(i, j + 1)] - u.y[g.face_y_index(i, j)]) / g.hy();
      d[g.cell_index(i, j)] = v;
    }
  return d;
}

namespace {

FaceField gradient_impl(const StructuredGrid& g, const CellField& p,
                        const std::vector<std::optional<double>>* partial,
                        const std::vector<double>* full) {
  if (!g.cell_sized(p)) throw std::invalid_argument("gradient: field/grid mismatch");
  FaceField out = g.make_face_field();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i)
      out.x[g.face_x_index(i, j)] =
          (p[g.cell_index(i, j)] - p[g.cell_index(i - 1, j)]) / g.hx();
  if (g.dimension() == 2)
    for (int j = 1; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        out.y[g.face_y_index(i, j)] =
            (p[g.cell_index(i, j)] - p[g.cell_index(i, j - 1)]) / g.hy();

  const auto& bfaces = g.boundary_faces();
  for (std::size_t k = 0; k < bfaces.size(); ++k) {
    const BoundaryFace& bf = bfaces[k];
    double bv;
    if (full) {
      bv = (*full)[k];
    } else {
      if (!(*partial)[k].has_value()) continue;
      bv = *(*partial)[k];
    }
    const double h = bf.axis == 0 ? g.hx() : g.hy();
    double* slot = bf.axis == 0 ? &out.x[bf.face] : &out.y[bf.face];
    // One-sided difference over the half cell, oriented along the +axis.
    *slot = bf.sign * (bv - p[bf.cell]) / (0.5 * h);
  }
  return out;
}

}  // namespace

FaceField gradient(const StructuredGrid& g, const CellField& p,
                   const std::vector<double>& boundary_values) {
  if (boundary_values.size() != g.boundary_faces().size())
    throw std::invalid_argument("gradient: missing boundary value on a boundary face");
  return gradient_impl(g, p, nullptr, &boundary_values);
}

FaceField gradient_partial(const StructuredGrid& g, const CellField& p,
                           const std::vector<std::optional<double>>& boundary_values) {
  if (boundary_values.size() != g.boundary_faces().size())
    throw std::invalid_argument("gradient: boundary value list size mismatch");
  return gradient_impl(g, p, &boundary_values, nullptr);
}

double integrate_cells(const StructuredGrid& g, const CellField& f) {
  if (!g.cell_sized(f)) throw std::invalid_argument("integrate_cells: size mismatch");
  double s = 0.0;
  for (double v : f) s += v;
  return s * g.cell_volume();
}

double integrate_cells(const StructuredGrid& g, const CellField& f, const CellField& h) {
  if (!g.cell_sized(f) || !g.cell_sized(h))
    throw std::invalid_argument("integrate_cells: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * h[i];
  return s * g.cell_volume();
}

double integrate_faces(const StructuredGrid& g, const FaceField& f, const FaceField& h) {
  if (!g.face_sized(f) || !g.face_sized(h))
    throw std::invalid_argument("integrate_faces: size mismatch");
  const auto& w = g.face_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.x.size(); ++i) s += w[i] * f.x[i] * h.x[i];
  const std::size_t off = g.num_faces_x();
  for (std::size_t i = 0; i < f.y.size(); ++i) s += w[off + i] * f.y[i] * h.y[i];
  return s;
}

double integrate_faces(const StructuredGrid& g, const FaceField& coeff, const FaceField& f,
                       const FaceField& h) {
  if (!g.face_sized(coeff) || !g.face_sized(f) || !g.face_sized(h))
    throw std::invalid_argument("integrate_faces: size mismatch");
  const auto& w = g.face_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.x.size(); ++i) s += w[i] * coeff.x[i] * f.x[i] * h.x[i];
  const std::size_t off = g.num_faces_x();
  for (std::size_t i = 0; i < f.y.size(); ++i)
    s += w[off + i] * coeff.y[i] * f.y[i] * h.y[i];
  return s;
}

FaceField face_average(const StructuredGrid& g, const CellField& c) {
  if (!g.cell_sized(c)) throw std::invalid_argument("face_average: size mismatch");
  FaceField f = g.make_face_field();
  for (int j = 0; j < g.ny(); ++j) {
    f.x[g.face_x_index(0, j)] = c[g.cell_index(0, j)];
    f.x[g.face_x_index(g.nx(), j)] = c[g.cell_index(g.nx() - 1, j)];
    for (int i = 1; i < g.nx(); ++i)
      f.x[g.face_x_index(i, j)] =
          0.5 * (c[g.cell_index(i - 1, j)] + c[g.cell_index(i, j)]);
  }
  if (g.dimension() == 2) {
    for (int i = 0; i < g.nx(); ++i) {
      f.y[g.face_y_index(i, 0)] = c[g.cell_index(i, 0)];
      f.y[g.face_y_index(i, g.ny())] = c[g.cell_index(i, g.ny() - 1)];
    }
    for (int j = 1; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        f.y[g.face_y_index(i, j)] =
            0.5 * (c[g.cell_index(i, j - 1)] + c[g.cell_index(i, j)]);
  }
  return f;
}

std::vector<std::array<double, 2>> cell_centers(const StructuredGrid& g) {
  std::vector<std::array<double, 2>> out(g.num_cells());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      out[g.cell_index(i, j)] = {(i + 0.5) * g.hx(), (j + 0.5) * g.hy()};
  return out;
}

std::vector<std::array<double, 2>> face_centers(const StructuredGrid& g) {
  std::vector<std::array<double, 2>> out(g.num_faces());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i <= g.nx(); ++i)
      out[g.face_x_index(i, j)] = {i * g.hx(), (j + 0.5) * g.hy()};
  if (g.dimension() == 2) {
    const std::size_t off = g.num_faces_x();
    for (int j = 0; j <= g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i)
        out[off + g.face_y_index(i, j)] = {(i + 0.5) * g.hx(), j * g.hy()};
  }
  return out;
}

}  // namespace dpp
