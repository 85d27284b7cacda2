// Time-series containers produced by the dynamics solvers: scalar series
// (total mass rho, per-region masses) on a sampling schedule, plus full
// density snapshots at requested times.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selmut/grid.hpp"

namespace selmut {

struct SamplingPlan {
  double dense_until = 1.0;      // record every step up to this time
  double sample_interval = 0.1;  // afterwards, record every this many time units
  std::vector<double> snapshot_times;
  std::vector<double> split_points;  // region boundaries for per-region masses
};

struct Snapshot {
  double time = 0.0;
  std::vector<double> density;
};

struct Trajectory {
  Grid1D grid;
  double dt = 0.0;
  std::string landscape_id;
  std::optional<double> stability_bound;  // engaged for diffusive runs
  std::vector<double> times;
  std::vector<double> rho;
  // region_mass[i] lists the masses of the split regions at times[i]; empty
  // rows when no splits were requested.
  std::vector<std::vector<double>> region_mass;
  std::vector<Snapshot> snapshots;

  std::size_t size() const { return times.size(); }
};

}  // namespace selmut
