// Flat key = value run configuration.  Repeatable keys (bump, ic_bump, split,
// snapshot, check) accumulate; scalar keys may appear once; anything
// unrecognized is an error rather than a silent ignore.
#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "selmut/errors.hpp"
#include "selmut/grid.hpp"
#include "selmut/landscape.hpp"

namespace selmut {

struct RunConfig {
  enum class Model { ide, pde };

  std::vector<GaussianBump> bumps;
  double offset = 0.0;
  double x_min = -1.0;
  double x_max = 2.0;
  int n_points = 1000;

  std::optional<double> ic_constant;
  std::vector<GaussianBump> ic_bumps;

  Model model = Model::ide;
  double beta = 0.0;
  double dt = 0.01;
  double t_final = 200.0;
  double dense_until = 1.0;
  double sample_interval = 0.1;

  std::vector<double> splits;
  std::vector<double> snapshots;
  std::vector<double> sweep_eps;
  double ball_radius = 0.1;
  std::vector<std::string> checks;
  std::string out_dir = "out";
};

inline const std::set<std::string>& known_check_names() {
  static const std::set<std::string> names = {
      "bounds",       "rate_algebraic", "weights",      "symmetric_masses",
      "rho_limit",    "selection",      "concentration"};
  return names;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_number(const std::string& s, int line_no) {
  char* end = nullptr;
  const std::string t = trim(s);
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw config_error("line " + std::to_string(line_no) + ": bad number '" + t + "'");
  return v;
}

inline std::vector<double> parse_number_list(const std::string& s, int line_no) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_number(cell, line_no));
  if (out.empty())
    throw config_error("line " + std::to_string(line_no) + ": empty value list");
  return out;
}

inline GaussianBump parse_bump(const std::string& s, int line_no) {
  const auto v = parse_number_list(s, line_no);
  if (v.size() != 3)
    throw config_error("line " + std::to_string(line_no) +
                       ": a bump needs exactly 'amplitude, center, width'");
  return GaussianBump{v[0], v[1], v[2]};
}

}  // namespace detail

inline RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::set<std::string> seen;  // scalar keys already assigned
  auto scalar_once = [&](const std::string& key, int line_no) {
    if (!seen.insert(key).second)
      throw config_error("line " + std::to_string(line_no) + ": duplicate key '" + key +
                         "'");
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (val.empty())
      throw config_error("line " + std::to_string(line_no) + ": empty value for '" + key +
                         "'");

    if (key == "bump") {
      cfg.bumps.push_back(detail::parse_bump(val, line_no));
    } else if (key == "ic_bump") {
      cfg.ic_bumps.push_back(detail::parse_bump(val, line_no));
    } else if (key == "split") {
      cfg.splits.push_back(detail::parse_number(val, line_no));
    } else if (key == "snapshot") {
      cfg.snapshots.push_back(detail::parse_number(val, line_no));
    } else if (key == "check") {
      if (!known_check_names().count(val))
        throw config_error("line " + std::to_string(line_no) + ": unknown check '" + val +
                           "'");
      cfg.checks.push_back(val);
    } else if (key == "sweep_eps") {
      scalar_once(key, line_no);
      cfg.sweep_eps = detail::parse_number_list(val, line_no);
    } else if (key == "model") {
      scalar_once(key, line_no);
      if (val == "ide")
        cfg.model = RunConfig::Model::ide;
      else if (val == "pde")
        cfg.model = RunConfig::Model::pde;
      else
        throw config_error("line " + std::to_string(line_no) + ": model must be 'ide' or "
                           "'pde', got '" + val + "'");
    } else if (key == "out_dir") {
      scalar_once(key, line_no);
      cfg.out_dir = val;
    } else if (key == "offset") {
      scalar_once(key, line_no);
      cfg.offset = detail::parse_number(val, line_no);
    } else if (key == "x_min") {
      scalar_once(key, line_no);
      cfg.x_min = detail::parse_number(val, line_no);
    } else if (key == "x_max") {
      scalar_once(key, line_no);
      cfg.x_max = detail::parse_number(val, line_no);
    } else if (key == "n_points") {
      scalar_once(key, line_no);
      const double v = detail::parse_number(val, line_no);
      cfg.n_points = static_cast<int>(v);
      if (cfg.n_points != v)
        throw config_error("line " + std::to_string(line_no) + ": n_points must be an "
                           "integer");
    } else if (key == "ic_constant") {
      scalar_once(key, line_no);
      cfg.ic_constant = detail::parse_number(val, line_no);
    } else if (key == "beta") {
      scalar_once(key, line_no);
      cfg.beta = detail::parse_number(val, line_no);
    } else if (key == "dt") {
      scalar_once(key, line_no);
      cfg.dt = detail::parse_number(val, line_no);
    } else if (key == "t_final") {
      scalar_once(key, line_no);
      cfg.t_final = detail::parse_number(val, line_no);
    } else if (key == "dense_until") {
      scalar_once(key, line_no);
      cfg.dense_until = detail::parse_number(val, line_no);
    } else if (key == "sample_interval") {
      scalar_once(key, line_no);
      cfg.sample_interval = detail::parse_number(val, line_no);
    } else if (key == "ball_radius") {
      scalar_once(key, line_no);
      cfg.ball_radius = detail::parse_number(val, line_no);
    } else {
      throw config_error("line " + std::to_string(line_no) + ": unknown key '" + key +
                         "'");
    }
  }
  return cfg;
}

inline RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open config file '" + path + "'");
  return parse_config(f);
}

inline RunConfig parse_config_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_config(ss);
}

// Concrete problem assembled from a config: grid, landscape and initial
// density on the nodes.
struct Problem {
  Landscape landscape;
  std::vector<double> n0;
};

inline Problem build_problem(const RunConfig& cfg) {
  const Grid1D grid = Grid1D::make(cfg.x_min, cfg.x_max, cfg.n_points);
  Landscape r = Landscape::make(cfg.bumps, cfg.offset, grid);
  if (r.bumps.empty() && !(r.offset > 0))
    throw config_error("landscape is empty: add at least one bump or a positive offset");

  if (!cfg.ic_constant && cfg.ic_bumps.empty())
    throw config_error("no initial condition: set ic_constant and/or ic_bump");
  const double c0 = cfg.ic_constant.value_or(0.0);
  if (c0 < 0) throw config_error("ic_constant must be nonnegative");
  for (const auto& b : cfg.ic_bumps) {
    if (!(b.width > 0)) throw config_error("ic_bump width must be positive");
    if (!(b.amplitude > 0)) throw config_error("ic_bump amplitude must be positive");
  }

  std::vector<double> n0(grid.n_points, c0);
  for (const auto& b : cfg.ic_bumps)
    for (int k = 0; k < grid.n_points; ++k) {
      const double u = grid.node(k) - b.center;
      n0[k] += b.amplitude * std::exp(-u * u / b.width);
    }

  if (cfg.model == RunConfig::Model::ide && cfg.beta != 0.0)
    throw config_error("beta is set but the model is 'ide'; use model = pde");
  if (cfg.beta < 0) throw config_error("beta must be nonnegative");

  return Problem{std::move(r), std::move(n0)};
}

}  // namespace selmut
