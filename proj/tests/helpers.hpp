// Shared fixtures for the test suite: the two reference landscapes (an
// asymmetric sharp/flat pair and a symmetric sharp/sharp pair on [-1, 2] with
// 1000 grid points) and small utilities.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "selmut/grid.hpp"
#include "selmut/landscape.hpp"

namespace fixtures {

inline selmut::Grid1D standard_grid(int n_points = 1000) {
  return selmut::Grid1D::make(-1.0, 2.0, n_points);
}

// Sharp peak at -0.5 (width 0.01), flat peak at 1 (width 0.1).
inline selmut::Landscape sharp_flat(int n_points = 1000) {
  return selmut::Landscape::make({{1.0, -0.5, 0.01}, {1.0, 1.0, 0.1}}, 0.0,
                                 standard_grid(n_points));
}

// Two equally sharp peaks at -0.5 and 1.5, symmetric about 0.5.
inline selmut::Landscape sharp_sharp(int n_points = 1000) {
  return selmut::Landscape::make({{1.0, -0.5, 0.01}, {1.0, 1.5, 0.01}}, 0.0,
                                 standard_grid(n_points));
}

inline std::vector<double> constant_density(const selmut::Grid1D& g, double c) {
  return std::vector<double>(g.n_points, c);
}

inline constexpr double kTwoThirds = 2.0 / 3.0;

// Deterministic positive test density with structure at several scales.
inline std::vector<double> wavy_density(const selmut::Grid1D& g, unsigned seed = 7u) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> n(g.n_points);
  for (int k = 0; k < g.n_points; ++k) {
    const double x = g.node(k);
    n[k] = u(gen) + 0.5 * (1.0 + std::sin(3.0 * x));
  }
  return n;
}

}  // namespace fixtures
