// Discrete spectral analysis of L = beta * Laplacian + r on the grid with
// zero-flux boundaries.  The operator is symmetrized by the trapezoid-weight
// similarity transform, its two largest eigenvalues are located by bisection
// on Sturm counts, and eigenvectors come from resolvent (inverse) iteration
// with a shift slightly above the target eigenvalue.  For the principal pair
// the shifted system is an M-matrix and the Thomas recurrences add only
// nonnegative terms, so the computed ground state is strictly positive at
// every node even when the true values sit near the underflow threshold.
//
// Sign conventions: eigenvalues of L are written as -lambda, so the reported
// principal lambda satisfies lambda <= r_max and -lambda -> r_max as beta -> 0.
// gamma = lambda - lambda_2 = (second largest - largest) eigenvalue <= 0 is
// the spectral gap that controls the second-mode decay e^{gamma t}.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "selmut/errors.hpp"
#include "selmut/grid.hpp"
#include "selmut/landscape.hpp"

namespace selmut {

struct EigenPair {
  enum class Norm { unit_mass, unit_l2 };
  double lambda = 0.0;       // L psi = -lambda psi
  std::vector<double> psi;   // on grid nodes
  double residual = 0.0;     // inf-norm residual of the symmetrized problem
  int iterations = 0;
  Norm normalization = Norm::unit_mass;
};

struct SpectralPair {
  EigenPair principal;  // unit mass, strictly positive
  EigenPair second;     // unit L2 (its integral can vanish)
  double gamma = 0.0;   // lambda - lambda2 <= 0
  bool degenerate = false;
};

namespace detail {

struct Tridiag {
  std::vector<double> d;  // diagonal
  std::vector<double> e;  // off-diagonal, size K-1
};

// Symmetrized operator S = D (beta*Lap + diag(r)) D^-1 with D = diag(sqrt w):
// d_k = r_k - 2 beta/h^2 everywhere, off-diagonals beta/h^2 except the two
// boundary couplings which pick up a factor sqrt(2) from the half weights.
inline Tridiag symmetrized_operator(const Landscape& r, double beta) {
  const Grid1D& g = r.domain;
  const int K = g.n_points;
  const double c = beta / (g.spacing() * g.spacing());
  Tridiag T;
  T.d.resize(K);
  T.e.assign(K - 1, c);
  T.e.front() *= std::sqrt(2.0);
  T.e.back() *= std::sqrt(2.0);
  for (int k = 0; k < K; ++k) T.d[k] = r(g.node(k)) - 2.0 * c;
  return T;
}

// Number of eigenvalues of T strictly below x, from the signs of the LDL^T
// pivots; tiny pivots are floored to keep the recurrence finite.
inline int sturm_count(const Tridiag& T, double x, double pivmin) {
  const int K = static_cast<int>(T.d.size());
  int cnt = 0;
  double q = T.d[0] - x;
  if (q < 0) ++cnt;
  for (int k = 1; k < K; ++k) {
    if (std::abs(q) < pivmin) q = -pivmin;
    q = T.d[k] - x - T.e[k - 1] * T.e[k - 1] / q;
    if (q < 0) ++cnt;
  }
  return cnt;
}

inline double kth_largest_eigenvalue(const Tridiag& T, int k) {
  const int K = static_cast<int>(T.d.size());
  double lo = T.d[0], hi = T.d[0], e_max = 0.0;
  for (int i = 0; i < K; ++i) {
    const double left = i > 0 ? std::abs(T.e[i - 1]) : 0.0;
    const double right = i + 1 < K ? std::abs(T.e[i]) : 0.0;
    lo = std::min(lo, T.d[i] - left - right);
    hi = std::max(hi, T.d[i] + left + right);
    e_max = std::max(e_max, right);
  }
  const double pivmin =
      std::max(e_max * e_max, 1.0) * std::numeric_limits<double>::min();
  const int want = K - k;  // eigenvalues strictly below the target
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(T, mid, pivmin) <= want)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(lo), std::abs(hi)) +
                       1e-300)
      break;
  }
  return 0.5 * (lo + hi);
}

// Magnitude bound on the operator (Gershgorin row sum); calibrates shift
// margins and degeneracy thresholds.
inline double operator_scale(const Tridiag& T) {
  double d = 0.0, e = 0.0;
  for (double v : T.d) d = std::max(d, std::abs(v));
  for (double v : T.e) e = std::max(e, std::abs(v));
  return d + 2.0 * e;
}

// Solve (sigma I - T) y = rhs by the Thomas algorithm.  With require_positive
// set, sigma must sit above the whole spectrum: the matrix is then a
// positive-definite M-matrix, and with rhs > 0 the forward/back substitutions
// add only positive terms, so y > 0 node-wise.  Without the flag (inverse
// iteration inside the spectrum, where some pivots are legitimately negative)
// near-zero pivots are floored instead.
inline void shifted_solve(const Tridiag& T, double sigma, const std::vector<double>& rhs,
                          std::vector<double>& y, std::vector<double>& cp,
                          std::vector<double>& yp, bool require_positive) {
  const int K = static_cast<int>(T.d.size());
  cp.resize(K);
  yp.resize(K);
  y.resize(K);
  double e_max = 0.0;
  for (double v : T.e) e_max = std::max(e_max, std::abs(v));
  const double pivmin =
      std::max(e_max * e_max, 1.0) * std::numeric_limits<double>::min();
  auto guard = [&](double& piv) {
    if (require_positive) {
      if (!(piv > 0)) throw numerics_error("resolvent shift is not above the spectrum");
    } else if (std::abs(piv) < pivmin) {
      piv = piv < 0 ? -pivmin : pivmin;
    }
  };
  cp[0] = sigma - T.d[0];
  yp[0] = rhs[0];
  for (int k = 1; k < K; ++k) {
    guard(cp[k - 1]);
    const double m = T.e[k - 1] / cp[k - 1];
    cp[k] = (sigma - T.d[k]) - T.e[k - 1] * m;
    yp[k] = rhs[k] + m * yp[k - 1];
  }
  guard(cp[K - 1]);
  y[K - 1] = yp[K - 1] / cp[K - 1];
  for (int k = K - 2; k >= 0; --k) y[k] = (yp[k] + T.e[k] * y[k + 1]) / cp[k];
}

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void apply_tridiag(const Tridiag& T, const std::vector<double>& v,
                          std::vector<double>& out) {
  const int K = static_cast<int>(T.d.size());
  out.resize(K);
  for (int k = 0; k < K; ++k) {
    double s = T.d[k] * v[k];
    if (k > 0) s += T.e[k - 1] * v[k - 1];
    if (k + 1 < K) s += T.e[k] * v[k + 1];
    out[k] = s;
  }
}

// Rayleigh value and inf-norm residual for a unit vector.
inline std::pair<double, double> rayleigh_residual(const Tridiag& T,
                                                   const std::vector<double>& y,
                                                   std::vector<double>& work) {
  apply_tridiag(T, y, work);
  const double mu = dot(y, work);
  double res = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k)
    res = std::max(res, std::abs(work[k] - mu * y[k]));
  return {mu, res};
}

// Residual tolerance proportional to the natural magnitude of the operator.
inline double residual_tol(const Landscape& r, double beta) {
  const double h = r.domain.spacing();
  const auto rv = r.values_on_grid();
  const double r_max = *std::max_element(rv.begin(), rv.end());
  return 1e-10 * (beta / (h * h) + std::max(r_max, 0.0));
}

struct SolveScratch {
  std::vector<double> y, cp, yp, work;
};

// Inverse iteration for the eigenvector belonging to mu (a converged
// bisection value).  `orthogonal_to` removes a known eigenvector component
// each sweep (used for the second pair); pass nullptr for the principal one.
inline std::pair<std::vector<double>, std::pair<double, double>> resolvent_eigenvector(
    const Tridiag& T, double mu, std::vector<double> start,
    const std::vector<double>* orthogonal_to, double tol, int max_iter, int& iters) {
  // Margin proportional to the operator magnitude: large enough to clear the
  // bisection error in mu (a few ulp of that magnitude), small next to any
  // resolvable spectral gap.
  const double sigma = mu + 1e-11 * std::max(operator_scale(T), 1e-3);
  // Only the principal solve sits above the whole spectrum; the second one
  // shifts into it, where negative pivots are expected.
  const bool positive_definite = (orthogonal_to == nullptr);
  SolveScratch s;
  double inv = 1.0 / norm2(start);
  for (double& v : start) v *= inv;
  std::pair<double, double> mu_res{mu, std::numeric_limits<double>::infinity()};
  for (iters = 1; iters <= max_iter; ++iters) {
    shifted_solve(T, sigma, start, s.y, s.cp, s.yp, positive_definite);
    if (orthogonal_to) {
      for (int pass = 0; pass < 2; ++pass) {
        const double c = dot(s.y, *orthogonal_to);
        for (std::size_t k = 0; k < s.y.size(); ++k) s.y[k] -= c * (*orthogonal_to)[k];
      }
    }
    inv = 1.0 / norm2(s.y);
    for (double& v : s.y) v *= inv;
    start = s.y;
    mu_res = rayleigh_residual(T, start, s.work);
    if (mu_res.second <= tol) break;
  }
  return {start, mu_res};
}

}  // namespace detail

inline SpectralPair solve_eigenpairs(const Landscape& r, double beta) {
  if (!(beta > 0)) throw config_error("spectral analysis needs beta > 0");
  const Grid1D& g = r.domain;
  const detail::Tridiag T = detail::symmetrized_operator(r, beta);
  const double tol = detail::residual_tol(r, beta);
  const int K = g.n_points;

  const double mu1 = detail::kth_largest_eigenvalue(T, 1);
  const double mu2 = detail::kth_largest_eigenvalue(T, 2);

  // Principal vector: positive start, positivity-preserving solves.
  int it1 = 0;
  auto [y1, mr1] = detail::resolvent_eigenvector(T, mu1, std::vector<double>(K, 1.0),
                                                 nullptr, tol, 60, it1);
  if (mr1.second > tol)
    throw numerics_error("principal eigenpair did not converge: residual " +
                         std::to_string(mr1.second) + " > " + std::to_string(tol));
  if (y1.front() < 0)
    for (double& v : y1) v = -v;

  SpectralPair out;
  out.principal.lambda = -mr1.first;
  out.principal.residual = mr1.second;
  out.principal.iterations = it1;
  out.principal.normalization = EigenPair::Norm::unit_mass;
  out.principal.psi.resize(K);
  for (int k = 0; k < K; ++k) {
    const double v = y1[k] / std::sqrt(trapezoid_weight(g, k));
    if (!(v > 0))
      throw numerics_error("principal eigenfunction lost positivity at node " +
                           std::to_string(k));
    out.principal.psi[k] = v;
  }
  const double mass = trapezoid(g, out.principal.psi);
  for (double& v : out.principal.psi) v /= mass;

  // Second vector: deterministic pseudo-random start, kept orthogonal to y1.
  std::mt19937 gen(12345u);
  std::vector<double> start(K);
  for (double& v : start)
    v = 2.0 * (static_cast<double>(gen()) * (1.0 / 4294967296.0)) - 1.0;
  int it2 = 0;
  auto [y2, mr2] = detail::resolvent_eigenvector(T, mu2, std::move(start), &y1, tol, 60, it2);
  if (mr2.second > tol)
    throw numerics_error("second eigenpair did not converge: residual " +
                         std::to_string(mr2.second) + " > " + std::to_string(tol));

  out.second.lambda = -mr2.first;
  out.second.residual = mr2.second;
  out.second.iterations = it2;
  out.second.normalization = EigenPair::Norm::unit_l2;
  out.second.psi.resize(K);
  int k_max = 0;
  for (int k = 0; k < K; ++k) {
    out.second.psi[k] = y2[k] / std::sqrt(trapezoid_weight(g, k));
    if (std::abs(y2[k]) > std::abs(y2[k_max])) k_max = k;
  }
  // ||psi2||_L2 = ||y2||_2 = 1 already; fix the sign deterministically.
  if (out.second.psi[k_max] < 0)
    for (double& v : out.second.psi) v = -v;

  out.gamma = mu2 - mu1;
  const double h = g.spacing();
  out.degenerate = std::abs(out.gamma) < 1e-13 * (beta / (h * h) + std::abs(mu1));
  return out;
}

inline EigenPair principal_eigenpair(const Landscape& r, double beta) {
  return solve_eigenpairs(r, beta).principal;
}

inline double second_eigenvalue(const Landscape& r, double beta) {
  if (!(beta > 0)) throw config_error("spectral analysis needs beta > 0");
  return -detail::kth_largest_eigenvalue(detail::symmetrized_operator(r, beta), 2);
}

// Discrete Rayleigh quotient in the lambda sign convention:
//   R(phi) = (beta sum h |dphi/h|^2 - int r phi^2) / int phi^2,
// with the gradient term summed over cells and the integrals by trapezoid.
// Satisfies R(phi) >= principal lambda, with equality on the eigenfunction.
inline double rayleigh_quotient(const Landscape& r, double beta,
                                const std::vector<double>& phi) {
  const Grid1D& g = r.domain;
  if (static_cast<int>(phi.size()) != g.n_points)
    throw config_error("rayleigh quotient: vector length does not match the grid");
  const double h = g.spacing();
  double grad = 0.0, pot = 0.0, nrm = 0.0;
  for (int k = 0; k + 1 < g.n_points; ++k) {
    const double d = (phi[k + 1] - phi[k]) / h;
    grad += h * d * d;
  }
  for (int k = 0; k < g.n_points; ++k) {
    const double w = trapezoid_weight(g, k);
    pot += w * r(g.node(k)) * phi[k] * phi[k];
    nrm += w * phi[k] * phi[k];
  }
  if (!(nrm > 0)) throw config_error("rayleigh quotient of the zero vector");
  return (beta * grad - pot) / nrm;
}

// Integral of the second-mode component of n0:  <n0, psi2>_L2 * int psi2,
// with psi2 unit-L2.  Vanishing projection gates the spectral decay rate.
inline double project_second(const Grid1D& g, const std::vector<double>& psi2,
                             const std::vector<double>& n0) {
  if (psi2.size() != n0.size() || static_cast<int>(psi2.size()) != g.n_points)
    throw config_error("projection: vector lengths do not match the grid");
  double inner = 0.0;
  for (int k = 0; k < g.n_points; ++k)
    inner += trapezoid_weight(g, k) * psi2[k] * n0[k];
  return inner * trapezoid(g, psi2);
}

struct EigenRow {
  double eps = 0.0;
  double lambda = 0.0;
  double lambda2 = 0.0;
  double gamma = 0.0;
  bool degenerate = false;
  double residual = 0.0;
  std::vector<double> peak_fractions;  // principal-eigenfunction mass near each peak
};

// Solve the eigenproblem for every mutation rate in eps_list (optionally in
// parallel) and report the principal mass fraction within `radius` of each
// landscape peak.  Results are ordered like eps_list and independent of the
// number of workers.
inline std::vector<EigenRow> epsilon_sweep(const Landscape& r,
                                           const std::vector<double>& eps_list,
                                           double radius, int jobs = 1) {
  if (eps_list.empty()) throw config_error("epsilon sweep: empty rate list");
  if (!(radius > 0)) throw config_error("epsilon sweep: radius must be positive");
  const auto peaks = find_peaks(r);

  auto solve_one = [&](double eps) {
    const SpectralPair sp = solve_eigenpairs(r, eps);
    EigenRow row;
    row.eps = eps;
    row.lambda = sp.principal.lambda;
    row.lambda2 = sp.second.lambda;
    row.gamma = sp.gamma;
    row.degenerate = sp.degenerate;
    row.residual = sp.principal.residual;
    const double total = trapezoid(r.domain, sp.principal.psi);
    for (const auto& p : peaks)
      row.peak_fractions.push_back(
          mass_on_interval(r.domain, sp.principal.psi, p.location - radius,
                           p.location + radius) /
          total);
    return row;
  };

  std::vector<EigenRow> rows(eps_list.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < eps_list.size(); ++i) rows[i] = solve_one(eps_list[i]);
  } else {
    std::vector<std::future<EigenRow>> futs;
    futs.reserve(eps_list.size());
    for (double eps : eps_list)
      futs.push_back(std::async(std::launch::async, solve_one, eps));
    for (std::size_t i = 0; i < futs.size(); ++i) rows[i] = futs[i].get();
  }
  return rows;
}

}  // namespace selmut
