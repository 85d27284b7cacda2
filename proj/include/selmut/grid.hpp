// Uniform 1-d grid plus the quadrature helpers every other module builds on:
// trapezoid integrals over the whole domain and exact integrals of the
// piecewise-linear interpolant over sub-intervals (used for region masses, so
// that masses of complementary regions add up to the total by construction).
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "selmut/errors.hpp"

namespace selmut {

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_points = 2;

  static Grid1D make(double x_min, double x_max, int n_points) {
    if (!(x_max > x_min))
      throw config_error("grid: x_max must exceed x_min (got [" +
                         std::to_string(x_min) + ", " + std::to_string(x_max) + "])");
    if (n_points < 3)
      throw config_error("grid: need at least 3 points, got " + std::to_string(n_points));
    return Grid1D{x_min, x_max, n_points};
  }

  double spacing() const { return (x_max - x_min) / (n_points - 1); }
  double node(int k) const { return x_min + k * spacing(); }
  double length() const { return x_max - x_min; }

  std::vector<double> nodes() const {
    std::vector<double> xs(n_points);
    for (int k = 0; k < n_points; ++k) xs[k] = node(k);
    return xs;
  }

  bool contains(double x) const { return x >= x_min && x <= x_max; }
};

inline bool same_grid(const Grid1D& a, const Grid1D& b) {
  return a.x_min == b.x_min && a.x_max == b.x_max && a.n_points == b.n_points;
}

// w_k = h at interior nodes, h/2 at the two ends.
inline double trapezoid_weight(const Grid1D& g, int k) {
  const double h = g.spacing();
  return (k == 0 || k == g.n_points - 1) ? 0.5 * h : h;
}

inline double trapezoid(const Grid1D& g, const std::vector<double>& n) {
  if (static_cast<int>(n.size()) != g.n_points)
    throw config_error("trapezoid: vector length " + std::to_string(n.size()) +
                       " does not match grid (" + std::to_string(g.n_points) + ")");
  double acc = 0.5 * (n.front() + n.back());
  for (int k = 1; k + 1 < g.n_points; ++k) acc += n[k];
  return acc * g.spacing();
}

// Integral of the piecewise-linear interpolant of n over [a, b] clipped to the
// domain.  Cell contributions are exact trapezoid areas of the interpolant, so
// summing over a partition of the domain reproduces trapezoid(g, n) up to
// rounding.
inline double mass_on_interval(const Grid1D& g, const std::vector<double>& n,
                               double a, double b) {
  if (static_cast<int>(n.size()) != g.n_points)
    throw config_error("mass_on_interval: vector length does not match grid");
  a = std::max(a, g.x_min);
  b = std::min(b, g.x_max);
  if (!(b > a)) return 0.0;

  const double h = g.spacing();
  // Cells [x_k, x_{k+1}] overlapping [a, b].
  int k_lo = static_cast<int>(std::floor((a - g.x_min) / h));
  int k_hi = static_cast<int>(std::floor((b - g.x_min) / h));
  k_lo = std::max(0, std::min(k_lo, g.n_points - 2));
  k_hi = std::max(0, std::min(k_hi, g.n_points - 2));

  auto value_at = [&](int k, double x) {
    const double t = (x - g.node(k)) / h;
    return n[k] + t * (n[k + 1] - n[k]);
  };

  double acc = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double lo = std::max(a, g.node(k));
    const double hi = std::min(b, g.node(k + 1));
    if (hi > lo) acc += 0.5 * (value_at(k, lo) + value_at(k, hi)) * (hi - lo);
  }
  return acc;
}

// Masses of the regions delimited by sorted interior split points.  With m
// splits the result has m+1 entries covering the whole domain.
inline std::vector<double> region_masses(const Grid1D& g, const std::vector<double>& n,
                                         const std::vector<double>& splits) {
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (splits[i] <= g.x_min || splits[i] >= g.x_max)
      throw config_error("region split " + std::to_string(splits[i]) +
                         " lies outside the open domain");
    if (i > 0 && splits[i] <= splits[i - 1])
      throw config_error("region splits must be strictly increasing");
  }
  std::vector<double> out;
  out.reserve(splits.size() + 1);
  double lo = g.x_min;
  for (double s : splits) {
    out.push_back(mass_on_interval(g, n, lo, s));
    lo = s;
  }
  out.push_back(mass_on_interval(g, n, lo, g.x_max));
  return out;
}

}  // namespace selmut
