#pragma once

#include <vector>

#include "grid.hpp"
#include "time_series.hpp"

namespace dpp {

/// The four solution fields at one instant.
struct StateSnapshot {
  FaceField u1, u2;
  CellField p1, p2;
  double t = 0.0;
};

/// Uniformly sampled solution history, snapshot k at time k*dt.
struct Trajectory {
  StructuredGrid grid;
  double dt = 0.0;
  std::vector<StateSnapshot> snapshots;

  std::size_t steps() const { return snapshots.empty() ? 0 : snapshots.size() - 1; }

  TimeSeries u1_series() const { return face_series(&StateSnapshot::u1); }
  TimeSeries u2_series() const { return face_series(&StateSnapshot::u2); }
  TimeSeries p1_series() const { return cell_series(&StateSnapshot::p1); }
  TimeSeries p2_series() const { return cell_series(&StateSnapshot::p2); }

 private:
  TimeSeries face_series(FaceField StateSnapshot::* m) const {
    TimeSeries s;
    s.dt = dt;
    s.samples.reserve(snapshots.size());
    for (const auto& snap : snapshots) s.samples.push_back(grid.flatten(snap.*m));
    return s;
  }
  TimeSeries cell_series(CellField StateSnapshot::* m) const {
    TimeSeries s;
    s.dt = dt;
    s.samples.reserve(snapshots.size());
    for (const auto& snap : snapshots) s.samples.push_back(snap.*m);
    return s;
  }
};

/// Snapshotwise a - b; houses the w/q difference fields of the uniqueness
/// analysis. Throws std::invalid_argument on mismatched grids or time axes.
Trajectory difference_trajectory(const Trajectory& a, const Trajectory& b);

}  // namespace dpp
