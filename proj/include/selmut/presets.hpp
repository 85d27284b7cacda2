// Bundled experiment presets for the `reproduce` command.  The same text
// lives in tools/configs/ so the experiments can also be run, inspected and
// edited as ordinary config files; a test keeps the two copies identical.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "selmut/errors.hpp"

namespace selmut {

inline const std::map<std::string, std::string>& preset_configs() {
  static const std::map<std::string, std::string> presets = {
      {"fig1",
       "# Selection only, two-peak landscape: sharp peak at -0.5, flat peak at 1.\n"
       "# Long-time state: two spikes with rho -> max r; almost no mass off-peak.\n"
       "model = ide\n"
       "bump = 1, -0.5, 0.01\n"
       "bump = 1, 1, 0.1\n"
       "x_min = -1\n"
       "x_max = 2\n"
       "n_points = 1000\n"
       "ic_constant = 0.66666666666666663\n"
       "dt = 0.01\n"
       "t_final = 200\n"
       "split = 0.5\n"
       "snapshot = 200\n"
       "ball_radius = 0.1\n"
       "check = bounds\n"
       "check = concentration\n"
       "check = rho_limit\n"},
      {"fig2",
       "# Same selection run as fig1, analyzed quantitatively: the mass deficit\n"
       "# decays like 1/(2t) and the two spikes carry the predicted weights.\n"
       "model = ide\n"
       "bump = 1, -0.5, 0.01\n"
       "bump = 1, 1, 0.1\n"
       "x_min = -1\n"
       "x_max = 2\n"
       "n_points = 1000\n"
       "ic_constant = 0.66666666666666663\n"
       "dt = 0.01\n"
       "t_final = 200\n"
       "split = 0.5\n"
       "snapshot = 200\n"
       "ball_radius = 0.1\n"
       "check = bounds\n"
       "check = rate_algebraic\n"
       "check = weights\n"},
      {"fig3",
       "# Small mutation on a symmetric double-peak landscape: the two wells\n"
       "# keep equal mass and the total mass approaches max r.\n"
       "model = pde\n"
       "beta = 1e-06\n"
       "bump = 1, -0.5, 0.01\n"
       "bump = 1, 1.5, 0.01\n"
       "x_min = -1\n"
       "x_max = 2\n"
       "n_points = 1000\n"
       "ic_constant = 0.66666666666666663\n"
       "dt = 0.01\n"
       "t_final = 200\n"
       "split = 0.5\n"
       "snapshot = 200\n"
       "ball_radius = 0.1\n"
       "check = symmetric_masses\n"
       "check = rho_limit\n"},
      {"fig4",
       "# Small mutation on the asymmetric two-peak landscape: over a long\n"
       "# horizon the flat peak takes essentially all the mass.\n"
       "model = pde\n"
       "beta = 1e-06\n"
       "bump = 1, -0.5, 0.01\n"
       "bump = 1, 1, 0.1\n"
       "x_min = -1\n"
       "x_max = 2\n"
       "n_points = 1000\n"
       "ic_constant = 0.66666666666666663\n"
       "dt = 0.01\n"
       "t_final = 800\n"
       "split = 0.5\n"
       "snapshot = 800\n"
       "ball_radius = 0.1\n"
       "check = selection\n"},
  };
  return presets;
}

inline const std::string& preset_config(const std::string& name) {
  const auto& m = preset_configs();
  const auto it = m.find(name);
  if (it == m.end()) {
    std::string names;
    for (const auto& [k, v] : m) names += (names.empty() ? "" : ", ") + k;
    throw config_error("unknown preset '" + name + "' (have: " + names + ")");
  }
  return it->second;
}

}  // namespace selmut
