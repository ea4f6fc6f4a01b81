#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "field.hpp"

namespace dpp {

/// One face lying on the domain boundary.
struct BoundaryFace {
  int axis = 0;           // 0 = x, 1 = y
  std::size_t face = 0;   // flat index within that axis' face array
  int sign = 0;           // outward normal sign along the axis (-1 low side, +1 high side)
  std::size_t cell = 0;   // adjacent cell
  std::size_t cell2 = 0;  // next cell inward along the axis (used for trace extrapolation)
  double area = 0.0;      // boundary measure of the face (1 in 1D, transverse h in 2D)
};

/// Uniform staggered (MAC) mesh in 1D or 2D: pressures at cell centers,
/// velocity components at faces. Indexing is x-fastest everywhere.
///
/// Face ordering conventions (fixed, relied on by serialization):
///   x-faces: id = i + (nx+1)*j, i in [0,nx], j in [0,ny)
///   y-faces: id = i + nx*j,     i in [0,nx), j in [0,ny]   (2D only)
/// Flattened face vectors are all x-faces followed by all y-faces.
/// Boundary faces are ordered: x-low (j ascending), x-high, y-low (i ascending), y-high.
class StructuredGrid {
 public:
  /// dimension in {1,2}; extents and cell counts strictly positive.
  /// Throws std::invalid_argument on degenerate input.
  static StructuredGrid make(int dimension, const std::vector<double>& extent,
                             const std::vector<int>& cells);

  int dimension() const { return dim_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double extent_x() const { return lx_; }
  double extent_y() const { return ly_; }
  double cell_volume() const { return vol_; }

  std::size_t num_cells() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t num_faces_x() const { return static_cast<std::size_t>(nx_ + 1) * ny_; }
  std::size_t num_faces_y() const {
    return dim_ == 2 ? static_cast<std::size_t>(nx_) * (ny_ + 1) : 0;
  }
  std::size_t num_faces() const { return num_faces_x() + num_faces_y(); }

  std::size_t cell_index(int i, int j = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx_) * j;
  }
  std::size_t face_x_index(int i, int j = 0) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx_ + 1) * j;
  }
  std::size_t face_y_index(int i, int j) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx_) * j;
  }

  const std::vector<BoundaryFace>& boundary_faces() const { return boundary_; }

  /// Quadrature weight per face, flattened (x faces then y faces).
  /// Interior faces carry a full cell volume; boundary faces carry half
  /// (trapezoidal in the staggered direction).
  const std::vector<double>& face_weights() const { return face_w_; }

  CellField make_cell_field(double v = 0.0) const { return CellField(num_cells(), v); }
  FaceField make_face_field(double v = 0.0) const;

  std::vector<double> flatten(const FaceField& f) const;
  FaceField unflatten(const std::vector<double>& v) const;

  bool cell_sized(const CellField& f) const { return f.size() == num_cells(); }
  bool face_sized(const FaceField& f) const {
    return f.x.size() == num_faces_x() && f.y.size() == num_faces_y();
  }

 private:
  int dim_ = 1;
  int nx_ = 0, ny_ = 1;
  double lx_ = 0.0, ly_ = 1.0;
  double hx_ = 0.0, hy_ = 1.0;
  double vol_ = 0.0;
  std::vector<BoundaryFace> boundary_;
  std::vector<double> face_w_;
};

/// Standard finite-volume divergence: per cell, sum of signed face fluxes
/// divided by the cell volume.
CellField divergence(const StructuredGrid& g, const FaceField& u);

/// Staggered gradient. Interior faces: (p_right - p_left)/h. Boundary faces:
/// one-sided difference against the prescribed boundary value at the face,
/// over the half-cell distance h/2. `boundary_values` must supply a value for
/// every boundary face, in boundary_faces() order.
FaceField gradient(const StructuredGrid& g, const CellField& p,
                   const std::vector<double>& boundary_values);

/// Gradient where only some boundary faces carry a prescribed value; faces
/// without one get a zero gradient entry (callers must not read those).
FaceField gradient_partial(const StructuredGrid& g, const CellField& p,
                           const std::vector<std::optional<double>>& boundary_values);

/// Midpoint-rule cell quadrature: sum of value times cell volume.
double integrate_cells(const StructuredGrid& g, const CellField& f);
/// ∫ f g dΩ over cells.
double integrate_cells(const StructuredGrid& g, const CellField& f, const CellField& h);

/// Face inner product ∫ f • g dΩ with half-volume weights on boundary faces.
double integrate_faces(const StructuredGrid& g, const FaceField& f, const FaceField& h);
/// ∫ c f • g dΩ with a face-located coefficient.
double integrate_faces(const StructuredGrid& g, const FaceField& coeff, const FaceField& f,
                       const FaceField& h);

/// Cell field interpolated to faces by arithmetic mean of the two adjacent
/// cells; boundary faces copy the single adjacent cell.
FaceField face_average(const StructuredGrid& g, const CellField& c);

/// Physical coordinates (x, y) of cell centers / face centers, in the flat
/// orderings above. y is 0.5 for 1D grids (unit transverse slab).
std::vector<std::array<double, 2>> cell_centers(const StructuredGrid& g);
std::vector<std::array<double, 2>> face_centers(const StructuredGrid& g);

}  // namespace dpp
