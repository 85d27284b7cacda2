// Fitness landscapes: sums of Gaussian bumps a*exp(-(x-c)^2/s) plus an
// optional constant offset, with analytic first/second derivatives.  Peak
// detection works on grid values with guarded Newton refinement; curvatures,
// flatness indices (zeta) and the symmetry test feed the asymptotic
// predictors.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "selmut/errors.hpp"
#include "selmut/grid.hpp"

namespace selmut {

struct GaussianBump {
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;  // the s in exp(-(x-c)^2/s), not a standard deviation
};

struct Landscape {
  std::vector<GaussianBump> bumps;
  double offset = 0.0;
  Grid1D domain;

  static Landscape make(std::vector<GaussianBump> bumps, double offset, Grid1D domain) {
    for (const auto& b : bumps) {
      if (!(b.width > 0))
        throw config_error("bump width must be positive, got " + std::to_string(b.width));
      if (!(b.amplitude > 0))
        throw config_error("bump amplitude must be positive, got " +
                           std::to_string(b.amplitude));
    }
    if (offset < 0)
      throw config_error("landscape offset must be nonnegative, got " +
                         std::to_string(offset));
    return Landscape{std::move(bumps), offset, domain};
  }

  double operator()(double x) const {
    double r = offset;
    for (const auto& b : bumps) {
      const double u = x - b.center;
      r += b.amplitude * std::exp(-u * u / b.width);
    }
    return r;
  }

  double derivative(double x) const {
    double d = 0.0;
    for (const auto& b : bumps) {
      const double u = x - b.center;
      d += b.amplitude * std::exp(-u * u / b.width) * (-2.0 * u / b.width);
    }
    return d;
  }

  double second_derivative(double x) const {
    double d = 0.0;
    for (const auto& b : bumps) {
      const double u = x - b.center;
      const double f = b.amplitude * std::exp(-u * u / b.width);
      d += f * (-2.0 / b.width + 4.0 * u * u / (b.width * b.width));
    }
    return d;
  }

  std::vector<double> values_on_grid() const {
    std::vector<double> r(domain.n_points);
    for (int k = 0; k < domain.n_points; ++k) r[k] = (*this)(domain.node(k));
    return r;
  }

  // Short tag used in run metadata.
  std::string id() const {
    std::string s = "bumps[";
    for (std::size_t i = 0; i < bumps.size(); ++i) {
      if (i) s += ";";
      s += std::to_string(bumps[i].amplitude) + "," + std::to_string(bumps[i].center) +
           "," + std::to_string(bumps[i].width);
    }
    s += "]+" + std::to_string(offset);
    return s;
  }
};

struct Peak {
  double location = 0.0;
  double value = 0.0;
  // In 1-d this holds the single second derivative r''(location); callers may
  // also build Peak records directly from externally supplied Hessian spectra.
  std::vector<double> hessian_eigenvalues;
  bool is_interior = true;
  bool is_stationary = true;
};

namespace detail {

// Stationarity threshold |r'| <= 1e-8 * r_M / h.
inline double stationarity_tol(double r_max, double h) { return 1e-8 * r_max / h; }

// Newton refinement of a grid-detected maximum, each step clamped to +-h and
// to the domain.  A single step leaves an O(offset^3) gradient residual that
// can sit above the stationarity threshold for narrow bumps, so iterate the
// guarded step until the gradient clears it (a couple of iterations).
inline double refine_peak(const Landscape& r, double x0, double r_max) {
  const Grid1D& g = r.domain;
  const double h = g.spacing();
  const double grad_tol = 0.01 * stationarity_tol(r_max, h);
  double x = x0;
  for (int it = 0; it < 8; ++it) {
    const double d1 = r.derivative(x);
    if (std::abs(d1) <= grad_tol) break;
    const double d2 = r.second_derivative(x);
    if (!(d2 < 0)) break;  // not locally concave; keep current point
    double step = -d1 / d2;
    step = std::clamp(step, -h, h);
    double xn = std::clamp(x + step, g.x_min, g.x_max);
    if (xn == x) break;
    x = xn;
  }
  return x;
}

}  // namespace detail

// Grid scan for near-global maxima, refined off-grid.  The node sample of a
// peak sitting between nodes sags below its true value by O(h^2/width), which
// for sharp bumps dwarfs rel_tol; so every local grid maximum is refined
// first and the near-max cut compares refined values.  An empty result
// signals a landscape with no positive peak (max r <= 0 on the grid).
inline std::vector<Peak> find_peaks(const Landscape& r, double rel_tol = 1e-6) {
  const Grid1D& g = r.domain;
  const std::vector<double> rv = r.values_on_grid();
  const double grid_max = *std::max_element(rv.begin(), rv.end());
  if (!(grid_max > 0)) return {};

  const double h = g.spacing();
  std::vector<Peak> cands;
  for (int k = 0; k < g.n_points; ++k) {
    const bool left_ok = (k == 0) || rv[k] > rv[k - 1];
    const bool right_ok = (k == g.n_points - 1) || rv[k] >= rv[k + 1];
    if (!(left_ok && right_ok)) continue;

    Peak p;
    p.location = detail::refine_peak(r, g.node(k), grid_max);
    p.value = r(p.location);
    p.hessian_eigenvalues = {r.second_derivative(p.location)};
    p.is_interior = (p.location - g.x_min >= h) && (g.x_max - p.location >= h);
    p.is_stationary =
        std::abs(r.derivative(p.location)) <= detail::stationarity_tol(grid_max, h);
    cands.push_back(p);
  }

  // Adjacent candidates can refine into the same point; keep the higher one.
  std::sort(cands.begin(), cands.end(),
            [](const Peak& a, const Peak& b) { return a.location < b.location; });
  std::vector<Peak> merged;
  for (const auto& p : cands) {
    if (!merged.empty() && std::abs(p.location - merged.back().location) < 0.5 * h) {
      if (p.value > merged.back().value) merged.back() = p;
    } else {
      merged.push_back(p);
    }
  }

  double top = 0.0;
  for (const auto& p : merged) top = std::max(top, p.value);
  std::vector<Peak> out;
  for (const auto& p : merged)
    if (p.value >= (1.0 - rel_tol) * top) out.push_back(p);
  return out;
}

// Global max of r taken over refined peak values; falls back to the grid max
// when no peak clears the detection threshold.
inline double refined_max(const Landscape& r) {
  const auto peaks = find_peaks(r);
  if (peaks.empty()) {
    const auto rv = r.values_on_grid();
    return *std::max_element(rv.begin(), rv.end());
  }
  double m = peaks.front().value;
  for (const auto& p : peaks) m = std::max(m, p.value);
  return m;
}

inline double grid_min(const Landscape& r) {
  const auto rv = r.values_on_grid();
  return *std::min_element(rv.begin(), rv.end());
}

// Analytic curvature at a stationary peak.  Degenerate (vanishing) curvature
// is an error: every consumer divides by it or takes its square root.
inline double curvature_at(const Landscape& r, const Peak& p) {
  if (!p.is_stationary)
    throw config_error("curvature requested at a non-stationary peak (x = " +
                       std::to_string(p.location) + ")");
  const double d2 = r.second_derivative(p.location);
  const double scale = std::max(refined_max(r), 1.0);
  if (!(d2 < -1e-8 * scale))
    throw numerics_error("degenerate curvature " + std::to_string(d2) + " at peak x = " +
                         std::to_string(p.location));
  return d2;
}

// Externally supplied Hessian spectra for general-d peaks pass through after a
// negativity check.
inline std::vector<double> validated_hessian_eigenvalues(std::vector<double> eigs) {
  if (eigs.empty()) throw config_error("empty Hessian eigenvalue list");
  for (double e : eigs)
    if (!(e < 0))
      throw numerics_error("Hessian eigenvalue " + std::to_string(e) +
                           " is not negative: peak is degenerate or a saddle");
  return eigs;
}

// Flatness index: sum of sqrt(|lambda_j|) over the Hessian spectrum.  Flat
// peaks (small curvature) have small zeta and win the selection criterion.
inline double zeta_from_eigenvalues(const std::vector<double>& eigs) {
  double z = 0.0;
  for (double e : validated_hessian_eigenvalues(eigs)) z += std::sqrt(-e);
  return z;
}

inline double zeta(const Peak& p) { return zeta_from_eigenvalues(p.hessian_eigenvalues); }

// Indices of all peaks whose zeta ties the minimum within rel_tol.
inline std::vector<std::size_t> argmin_zeta(const std::vector<Peak>& peaks,
                                            double rel_tol = 1e-9) {
  if (peaks.empty()) throw config_error("argmin_zeta: no peaks");
  std::vector<double> zs(peaks.size());
  for (std::size_t i = 0; i < peaks.size(); ++i) zs[i] = zeta(peaks[i]);
  const double z_min = *std::min_element(zs.begin(), zs.end());
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < peaks.size(); ++i)
    if (zs[i] <= z_min * (1.0 + rel_tol)) idx.push_back(i);
  return idx;
}

// Max node-wise asymmetry of r about x = c, relative to max r.  Mirrored
// points falling outside the domain are skipped.
inline bool check_symmetry(const Landscape& r, double c, double rel_tol = 1e-9) {
  const Grid1D& g = r.domain;
  if (!g.contains(c))
    throw config_error("symmetry center " + std::to_string(c) + " outside the domain");
  const auto rv = r.values_on_grid();
  const double r_max = *std::max_element(rv.begin(), rv.end());
  double worst = 0.0;
  for (int k = 0; k < g.n_points; ++k) {
    const double m = 2.0 * c - g.node(k);
    if (!g.contains(m)) continue;
    worst = std::max(worst, std::abs(rv[k] - r(m)));
  }
  return worst <= rel_tol * std::max(r_max, 1e-300);
}

}  // namespace selmut
