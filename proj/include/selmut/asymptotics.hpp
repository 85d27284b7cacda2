// Long-time predictions and their comparison against simulated trajectories:
// Dirac weights from initial data and peak curvatures, algebraic/exponential
// rate fits on the total-mass series, the flatness-based selection of the
// surviving peak, and mass-concentration reports around peaks.
#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "selmut/errors.hpp"
#include "selmut/grid.hpp"
#include "selmut/landscape.hpp"
#include "selmut/spectral.hpp"
#include "selmut/trajectory.hpp"

namespace selmut {

struct WeightPrediction {
  std::vector<double> weights;  // normalized to sum 1
  std::vector<bool> halved;     // stationary boundary peak, half weight
  std::vector<bool> excluded;   // non-stationary boundary peak, zero weight
};

// Dirac weights a_i ~ n0(x_i) / sqrt(|det Hessian_i|), with the boundary
// rules: a stationary boundary peak only collects half a neighborhood, and a
// non-stationary boundary peak loses out entirely to interior peaks.
inline WeightPrediction predict_weights(const std::vector<Peak>& peaks,
                                        const std::vector<double>& n0_at_peaks) {
  if (peaks.empty()) throw config_error("weight prediction: no peaks");
  if (peaks.size() != n0_at_peaks.size())
    throw config_error("weight prediction: need one initial value per peak");

  bool any_interior = false;
  for (const auto& p : peaks) any_interior = any_interior || p.is_interior;

  const std::size_t m = peaks.size();
  WeightPrediction out;
  out.weights.assign(m, 0.0);
  out.halved.assign(m, false);
  out.excluded.assign(m, false);

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Peak& p = peaks[i];
    if (!(n0_at_peaks[i] >= 0))
      throw config_error("negative initial density at peak " + std::to_string(i));
    if (p.is_interior && !p.is_stationary)
      throw numerics_error("interior peak at x = " + std::to_string(p.location) +
                           " is not stationary; peak record is inconsistent");
    if (!p.is_interior && !p.is_stationary) {
      out.excluded[i] = any_interior;
      if (any_interior) continue;  // zero weight
    }
    double det = 1.0;
    for (double e : validated_hessian_eigenvalues(p.hessian_eigenvalues)) det *= e;
    double num = n0_at_peaks[i] / std::sqrt(std::abs(det));
    if (!p.is_interior && p.is_stationary) {
      num *= 0.5;
      out.halved[i] = true;
    }
    out.weights[i] = num;
    total += num;
  }
  if (!(total > 0))
    throw numerics_error("initial density vanishes at every surviving peak; "
                         "support condition violated");
  for (double& w : out.weights) w /= total;
  return out;
}

template <class F>
  requires std::invocable<F&, double>
WeightPrediction predict_weights(const std::vector<Peak>& peaks, F&& n0_at) {
  std::vector<double> vals;
  vals.reserve(peaks.size());
  for (const auto& p : peaks) vals.push_back(n0_at(p.location));
  return predict_weights(peaks, vals);
}

struct RateFit {
  enum class Kind { algebraic, exponential };
  Kind kind = Kind::algebraic;
  double coefficient = 0.0;  // algebraic: c in (r_max - rho) ~ c/t; exponential: slope
  double intercept = 0.0;    // exponential: log amplitude
  double window_begin = 0.0;
  double window_end = 0.0;
  int n_samples = 0;
  double max_rel_deviation = 0.0;  // algebraic spread around the mean
  double half_window_drift = 0.0;  // exponential slope drift between half-windows
  bool window_shrunk = false;      // exponential window cut at the residual floor
};

// Fit (r_max - rho(t)) * t ~ c over the samples with t in [t_begin, t_end].
inline RateFit fit_algebraic(const Trajectory& traj, double r_max, double t_begin,
                             double t_end) {
  std::vector<double> ys;
  RateFit fit;
  fit.kind = RateFit::Kind::algebraic;
  fit.window_begin = t_begin;
  fit.window_end = t_end;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    if (t < t_begin || t > t_end) continue;
    ys.push_back((r_max - traj.rho[i]) * t);
  }
  fit.n_samples = static_cast<int>(ys.size());
  if (fit.n_samples < 50)
    throw config_error("algebraic fit window holds " + std::to_string(ys.size()) +
                       " samples; need at least 50");
  double sum = 0.0;
  for (double y : ys) sum += y;
  fit.coefficient = sum / fit.n_samples;
  const double denom = std::max(std::abs(fit.coefficient), 1e-300);
  for (double y : ys)
    fit.max_rel_deviation =
        std::max(fit.max_rel_deviation, std::abs(y - fit.coefficient) / denom);
  return fit;
}

// Default window: the trailing half of the recorded samples.
inline RateFit fit_algebraic(const Trajectory& traj, double r_max) {
  if (traj.size() < 2) throw config_error("algebraic fit: trajectory too short");
  return fit_algebraic(traj, r_max, traj.times[traj.size() / 2], traj.times.back());
}

namespace detail {

// Plain least-squares line z = a + b t; returns {b, a}.
inline std::pair<double, double> lsq_line(const std::vector<double>& t,
                                          const std::vector<double>& z) {
  const std::size_t n = t.size();
  double st = 0, sz = 0, stt = 0, stz = 0;
  for (std::size_t i = 0; i < n; ++i) {
    st += t[i];
    sz += z[i];
    stt += t[i] * t[i];
    stz += t[i] * z[i];
  }
  const double det = n * stt - st * st;
  if (!(std::abs(det) > 0)) throw numerics_error("degenerate least-squares system");
  const double b = (n * stz - st * sz) / det;
  const double a = (sz - b * st) / n;
  return {b, a};
}

}  // namespace detail

// Fit log|limit - rho(t)| ~ intercept + slope * t.  The window opens once the
// residual has dropped below 10% of its initial size and closes where it
// reaches the 1e-12 floor (rounding noise would otherwise pollute the slope).
// half_window_drift compares the slopes of the two window halves: a large
// drift means the decay is not a clean exponential on this window.
inline RateFit fit_exponential(const Trajectory& traj, double limit) {
  std::vector<double> a(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) a[i] = std::abs(limit - traj.rho[i]);
  if (traj.size() < 2 || !(a[0] > 0))
    throw config_error("exponential fit: residual already at the limit");

  std::size_t start = traj.size();
  for (std::size_t i = 0; i < traj.size(); ++i)
    if (a[i] < 0.1 * a[0]) {
      start = i;
      break;
    }
  if (start >= traj.size())
    throw config_error("exponential fit: residual never dropped below 10% of its "
                       "initial size");
  std::size_t end = traj.size() - 1;
  RateFit fit;
  fit.kind = RateFit::Kind::exponential;
  while (end > start && !(a[end] > 1e-12)) {
    --end;
    fit.window_shrunk = true;
  }

  std::vector<double> ts, zs;
  for (std::size_t i = start; i <= end; ++i) {
    if (!(a[i] > 0)) continue;
    ts.push_back(traj.times[i]);
    zs.push_back(std::log(a[i]));
  }
  if (ts.size() < 10)
    throw config_error("exponential fit window holds " + std::to_string(ts.size()) +
                       " usable samples; need at least 10");

  auto [slope, icept] = detail::lsq_line(ts, zs);
  fit.coefficient = slope;
  fit.intercept = icept;
  fit.window_begin = ts.front();
  fit.window_end = ts.back();
  fit.n_samples = static_cast<int>(ts.size());

  const std::size_t mid = ts.size() / 2;
  std::vector<double> t1(ts.begin(), ts.begin() + mid), z1(zs.begin(), zs.begin() + mid);
  std::vector<double> t2(ts.begin() + mid, ts.end()), z2(zs.begin() + mid, zs.end());
  if (t1.size() >= 2 && t2.size() >= 2) {
    const double s1 = detail::lsq_line(t1, z1).first;
    const double s2 = detail::lsq_line(t2, z2).first;
    fit.half_window_drift = std::abs(s1 - s2) / std::max(std::abs(slope), 1e-300);
  }
  return fit;
}

struct RatePrediction {
  double rate = 0.0;  // expected decay exponent of limit - rho(t)
  double gamma = 0.0;
  double lambda = 0.0;
  double gate_value = 0.0;  // integrated second-mode content of n0
  bool gate_nonzero = false;
};

// The total mass approaches -lambda at rate gamma (the spectral gap) provided
// the initial datum actually contains the second mode; otherwise the gap term
// is absent and the principal rate takes over.
inline RatePrediction predicted_decay_rate(const SpectralPair& sp, const Grid1D& g,
                                           const std::vector<double>& n0) {
  RatePrediction out;
  out.gamma = sp.gamma;
  out.lambda = sp.principal.lambda;
  out.gate_value = project_second(g, sp.second.psi, n0);
  out.gate_nonzero = std::abs(out.gate_value) > 1e-8 * trapezoid(g, n0);
  out.rate = (out.gate_nonzero && sp.gamma > sp.principal.lambda) ? sp.gamma
                                                                  : sp.principal.lambda;
  return out;
}

struct SelectionResult {
  enum class Status { unique, symmetric_pair, indeterminate };
  Status status = Status::indeterminate;
  std::vector<std::size_t> peak_indices;  // the argmin-zeta set
};

// Vanishing-mutation selection: the flattest peak (smallest zeta) survives.
// A two-way tie on a landscape symmetric about the midpoint is resolved as an
// equal split; any other tie is reported as indeterminate.
inline SelectionResult select_surviving_peak(const Landscape& r,
                                             const std::vector<Peak>& peaks) {
  SelectionResult out;
  out.peak_indices = argmin_zeta(peaks);
  if (out.peak_indices.size() == 1) {
    out.status = SelectionResult::Status::unique;
  } else if (out.peak_indices.size() == 2) {
    const double c = 0.5 * (peaks[out.peak_indices[0]].location +
                            peaks[out.peak_indices[1]].location);
    if (check_symmetry(r, c)) out.status = SelectionResult::Status::symmetric_pair;
  }
  return out;
}

struct ConcentrationReport {
  double radius = 0.0;
  std::vector<double> fractions;  // mass fraction within radius of each peak
  double off_peak = 0.0;          // remaining fraction
};

inline ConcentrationReport concentration_report(const Grid1D& g,
                                                const std::vector<double>& n,
                                                const std::vector<Peak>& peaks,
                                                double radius) {
  if (!(radius > 0)) throw config_error("concentration report: radius must be positive");
  for (std::size_t i = 0; i < peaks.size(); ++i)
    for (std::size_t j = i + 1; j < peaks.size(); ++j)
      if (std::abs(peaks[i].location - peaks[j].location) < 2 * radius)
        throw config_error("concentration report: peak balls overlap at radius " +
                           std::to_string(radius));
  const double total = trapezoid(g, n);
  if (!(total > 0)) throw config_error("concentration report: empty density");
  ConcentrationReport rep;
  rep.radius = radius;
  double covered = 0.0;
  for (const auto& p : peaks) {
    const double m =
        mass_on_interval(g, n, p.location - radius, p.location + radius) / total;
    rep.fractions.push_back(m);
    covered += m;
  }
  rep.off_peak = 1.0 - covered;
  return rep;
}

}  // namespace selmut
