// Selection-mutation dynamics: dn/dt - beta * n_xx = (r - rho) n with
// zero-flux (Neumann) boundaries, discretized by the mirrored-ghost second
// difference and stepped with forward Euler.  The step size must respect the
// explicit stability bound; too-large steps are rejected up front.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "selmut/detail/euler.hpp"
#include "selmut/errors.hpp"
#include "selmut/grid.hpp"
#include "selmut/landscape.hpp"
#include "selmut/trajectory.hpp"

namespace selmut {

struct PdeOptions {
  double beta = 1e-6;
  double dt = 0.01;
  double t_final = 200.0;
  SamplingPlan plan;
};

inline void apply_neumann_laplacian(const Grid1D& g, const std::vector<double>& u,
                                    std::vector<double>& out) {
  if (static_cast<int>(u.size()) != g.n_points)
    throw config_error("laplacian input length does not match the grid");
  detail::neumann_laplacian(g, u, out);
}

inline std::vector<double> apply_neumann_laplacian(const Grid1D& g,
                                                   const std::vector<double>& u) {
  std::vector<double> out(u.size());
  apply_neumann_laplacian(g, u, out);
  return out;
}

// 0.9 * min(diffusive CFL, reaction bound); either part degenerates to
// infinity when absent.
inline double stability_bound(double beta, double h, double r_max, double rho_max) {
  const double inf = std::numeric_limits<double>::infinity();
  const double diffusive = beta > 0 ? h * h / (2.0 * beta) : inf;
  const double reactive = (r_max + rho_max > 0) ? 1.0 / (r_max + rho_max) : inf;
  return 0.9 * std::min(diffusive, reactive);
}

inline Trajectory simulate_pde(const Landscape& r, const std::vector<double>& n0,
                               const PdeOptions& opt) {
  if (opt.beta < 0) throw config_error("mutation rate beta must be >= 0");
  detail::validate_initial_density(r.domain, n0);
  const double r_max = refined_max(r);
  const double rho_max = std::max(trapezoid(r.domain, n0), r_max);
  const double bound = stability_bound(opt.beta, r.domain.spacing(), r_max, rho_max);
  if (opt.dt > bound)
    throw config_error("dt = " + detail::fmt_g(opt.dt) + " exceeds the stability bound " +
                       detail::fmt_g(bound) + " (beta = " + detail::fmt_g(opt.beta) + ")");
  Trajectory traj = detail::run_euler(r, n0, opt.beta, opt.dt, opt.t_final, opt.plan);
  traj.stability_bound = bound;
  return traj;
}

}  // namespace selmut
