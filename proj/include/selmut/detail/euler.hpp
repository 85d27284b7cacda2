// Shared forward-Euler kernel for the selection dynamics with and without
// diffusion.  The selection-only solver calls this with beta = 0, and the
// diffusive solver with beta > 0; with beta = 0 the update arithmetic is
// bit-identical to the pure selection scheme.
#pragma once

#include <cmath>
#include <cstdio>
#include <set>
#include <vector>

#include "selmut/errors.hpp"
#include "selmut/grid.hpp"
#include "selmut/landscape.hpp"
#include "selmut/trajectory.hpp"

namespace selmut::detail {

inline std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Mirrored-ghost second difference with zero-flux ends: interior rows
// (1,-2,1)/h^2, end rows (-2,2)/h^2.  Exactly mass-conserving under trapezoid
// weights and symmetric in the weighted inner product.
inline void neumann_laplacian(const Grid1D& g, const std::vector<double>& u,
                              std::vector<double>& out) {
  const int K = g.n_points;
  const double ih2 = 1.0 / (g.spacing() * g.spacing());
  out.resize(K);
  out[0] = 2.0 * (u[1] - u[0]) * ih2;
  for (int k = 1; k + 1 < K; ++k) out[k] = (u[k - 1] - 2.0 * u[k] + u[k + 1]) * ih2;
  out[K - 1] = 2.0 * (u[K - 2] - u[K - 1]) * ih2;
}

inline void validate_initial_density(const Grid1D& g, const std::vector<double>& n0) {
  if (static_cast<int>(n0.size()) != g.n_points)
    throw config_error("initial density length does not match the grid");
  bool any_pos = false;
  for (double v : n0) {
    if (!std::isfinite(v) || v < 0)
      throw config_error("initial density must be finite and nonnegative");
    any_pos = any_pos || v > 0;
  }
  if (!any_pos) throw config_error("initial density is identically zero");
}

inline Trajectory run_euler(const Landscape& r, std::vector<double> n, double beta,
                            double dt, double t_final, const SamplingPlan& plan) {
  const Grid1D& g = r.domain;
  validate_initial_density(g, n);
  if (!(dt > 0)) throw config_error("dt must be positive");
  if (!(t_final > 0)) throw config_error("t_final must be positive");
  if (!(plan.sample_interval > 0)) throw config_error("sample interval must be positive");
  if (plan.dense_until < 0) throw config_error("dense sampling horizon must be >= 0");

  const long long n_steps = std::llround(t_final / dt);
  if (n_steps < 1) throw config_error("t_final shorter than one step");
  const long long stride = std::max<long long>(1, std::llround(plan.sample_interval / dt));
  const long long dense_steps = std::min<long long>(n_steps, std::llround(plan.dense_until / dt));

  std::set<long long> snap_steps;
  for (double ts : plan.snapshot_times) {
    const long long m = std::llround(ts / dt);
    if (ts < 0 || m > n_steps)
      throw config_error("snapshot time " + fmt_g(ts) + " outside [0, t_final]");
    snap_steps.insert(m);
  }

  const std::vector<double> rv = r.values_on_grid();
  Trajectory traj;
  traj.grid = g;
  traj.dt = dt;
  traj.landscape_id = r.id();

  auto record = [&](long long m) {
    const double t = m * dt;
    traj.times.push_back(t);
    traj.rho.push_back(trapezoid(g, n));
    traj.region_mass.push_back(plan.split_points.empty()
                                   ? std::vector<double>{}
                                   : region_masses(g, n, plan.split_points));
    if (snap_steps.count(m)) traj.snapshots.push_back({t, n});
  };
  if (!plan.split_points.empty()) region_masses(g, n, plan.split_points);  // validate early
  record(0);

  const int K = g.n_points;
  std::vector<double> lap;
  for (long long m = 1; m <= n_steps; ++m) {
    const double rho = trapezoid(g, n);
    if (!std::isfinite(rho))
      throw instability_error("total mass lost finiteness at t = " + fmt_g((m - 1) * dt));

    if (beta != 0.0) {
      neumann_laplacian(g, n, lap);
      for (int k = 0; k < K; ++k)
        n[k] = n[k] + dt * (beta * lap[k] + (rv[k] - rho) * n[k]);
    } else {
      for (int k = 0; k < K; ++k) n[k] = n[k] + dt * ((rv[k] - rho) * n[k]);
    }

    // The explicit scheme may round slightly below zero; clamp those, but a
    // clearly negative value means the step size violates positivity.
    double mx = 0.0;
    for (int k = 0; k < K; ++k) {
      if (!std::isfinite(n[k]))
        throw instability_error("density lost finiteness at t = " + fmt_g(m * dt) +
                                ", x = " + fmt_g(g.node(k)));
      mx = std::max(mx, n[k]);
    }
    const double floor = -1e-14 * mx;
    for (int k = 0; k < K; ++k) {
      if (n[k] < floor)
        throw numerics_error("scheme produced negative density " + fmt_g(n[k]) +
                             " at t = " + fmt_g(m * dt) + ", x = " + fmt_g(g.node(k)));
      if (n[k] < 0) n[k] = 0.0;
    }

    if (m <= dense_steps || m % stride == 0 || m == n_steps || snap_steps.count(m))
      record(m);
  }
  return traj;
}

}  // namespace selmut::detail
