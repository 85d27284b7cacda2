// Selection-only dynamics: dn/dt = (r(x) - rho(t)) n with rho the total mass.
// Forward Euler with the total mass frozen at the start of each step, plus the
// closed-form solution used as an independent cross-check.
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

struct IdeOptions {
  double dt = 0.01;
  double t_final = 200.0;
  SamplingPlan plan;
};

// Reaction-only step-size bound with the same safety factor as the diffusive
// solver (see stability_bound in pde.hpp).
inline double ide_stability_bound(double r_max, double rho_max) {
  if (!(r_max + rho_max > 0)) return std::numeric_limits<double>::infinity();
  return 0.9 / (r_max + rho_max);
}

inline Trajectory simulate_ide(const Landscape& r, const std::vector<double>& n0,
                               const IdeOptions& opt) {
  detail::validate_initial_density(r.domain, n0);
  const double r_max = refined_max(r);
  const double rho_max = std::max(trapezoid(r.domain, n0), r_max);
  const double bound = ide_stability_bound(r_max, rho_max);
  if (opt.dt > bound)
    throw config_error("dt = " + detail::fmt_g(opt.dt) +
                       " exceeds the selection stability bound " + detail::fmt_g(bound));
  return detail::run_euler(r, n0, 0.0, opt.dt, opt.t_final, opt.plan);
}

// Closed-form solution of the selection equation,
//   n(t,x) = n0(x) e^{r(x) t} / (1 + sum_y w_y n0(y)/r(y) (e^{r(y) t} - 1)),
// evaluated with every exponential factored against e^{r_max t} so nothing
// overflows at large t.  Requires r > 0 on the whole grid.
inline std::vector<double> explicit_solution(const Landscape& r,
                                             const std::vector<double>& n0, double t) {
  const Grid1D& g = r.domain;
  detail::validate_initial_density(g, n0);
  if (t < 0) throw config_error("explicit solution requested at negative time");
  const double r_min = grid_min(r);
  if (!(r_min > 0))
    throw config_error("closed-form solution needs r > 0 everywhere (min r = " +
                       detail::fmt_g(r_min) + ")");
  const double r_max = refined_max(r);
  const std::vector<double> rv = r.values_on_grid();

  // Denominator scaled by e^{-r_max t}:
  //   G = e^{-r_max t} + sum w n0/r (e^{(r - r_max) t} - e^{-r_max t}).
  const double e_floor = std::exp(-r_max * t);
  double G = e_floor;
  for (int k = 0; k < g.n_points; ++k) {
    const double w = trapezoid_weight(g, k);
    double term;
    if (rv[k] * t < 0.5)
      term = std::expm1(rv[k] * t) * e_floor;  // accurate for small exponents
    else
      term = std::exp((rv[k] - r_max) * t) - e_floor;
    G += w * n0[k] / rv[k] * term;
  }

  std::vector<double> n(g.n_points);
  for (int k = 0; k < g.n_points; ++k)
    n[k] = n0[k] * std::exp((rv[k] - r_max) * t) / G;
  return n;
}

// A-priori envelope for the total mass: rho stays within
// [min(rho(0), min r), max(rho(0), max r)] up to a discretization slack.
struct BoundsReport {
  double lower = 0.0, upper = 0.0;  // envelope including slack
  double min_rho = 0.0, max_rho = 0.0;
  bool ok = false;
};

inline BoundsReport apriori_bounds(const Trajectory& traj, double r_min, double r_max) {
  if (traj.rho.empty()) throw config_error("empty trajectory");
  const double slack = 10.0 * traj.dt * r_max * r_max;
  BoundsReport rep;
  rep.lower = std::min(traj.rho.front(), r_min) - slack;
  rep.upper = std::max(traj.rho.front(), r_max) + slack;
  rep.min_rho = rep.max_rho = traj.rho.front();
  for (double v : traj.rho) {
    rep.min_rho = std::min(rep.min_rho, v);
    rep.max_rho = std::max(rep.max_rho, v);
  }
  rep.ok = rep.min_rho >= rep.lower && rep.max_rho <= rep.upper;
  return rep;
}

}  // namespace selmut
