#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dpp {

/// Least-squares slope of log(error) against log(spacing): the observed
/// convergence order of a refinement study. Needs >= 2 levels with positive
/// errors and spacings.
inline double fit_order(const std::vector<double>& spacings,
                        const std::vector<double>& errors) {
  if (spacings.size() != errors.size() || spacings.size() < 2)
    throw std::invalid_argument("fit_order: need matching lists of >= 2 levels");
  const std::size_t n = spacings.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(spacings[i] > 0.0) || !(errors[i] > 0.0))
      throw std::invalid_argument("fit_order: spacings and errors must be positive");
    const double x = std::log(spacings[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace dpp
