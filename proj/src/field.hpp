#pragma once

#include <vector>

namespace dpp {

/// Scalar value per cell (pressure, porosity, any cell quantity).
using CellField = std::vector<double>;

/// One value per face, per axis: the velocity component normal to the face.
/// In 1D only the x component is populated.
struct FaceField {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t total() const { return x.size() + y.size(); }
};

}  // namespace dpp
