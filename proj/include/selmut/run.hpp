// Orchestration: turn a RunConfig into simulations, spectral solves and
// predictions, evaluate the named pass/fail checks, and write the artifacts
// (trajectory.csv, snapshot_*.csv, eigen.csv, eigenfunction.csv,
// summary.json) into the output directory.  All output formatting is
// deterministic so identical configs give byte-identical artifacts.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "selmut/asymptotics.hpp"
#include "selmut/config.hpp"
#include "selmut/csv.hpp"
#include "selmut/errors.hpp"
#include "selmut/grid.hpp"
#include "selmut/ide.hpp"
#include "selmut/landscape.hpp"
#include "selmut/pde.hpp"
#include "selmut/spectral.hpp"
#include "selmut/trajectory.hpp"

namespace selmut {

using json = nlohmann::ordered_json;

struct RunOptions {
  bool checks = true;
  int jobs = 1;
  std::string out_dir;  // overrides cfg.out_dir when nonempty
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  std::string detail;
};

struct RunOutput {
  json summary;
  std::vector<CheckResult> checks;
  bool all_passed = true;
  std::filesystem::path out_dir;
};

namespace detail {

inline std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

inline json bumps_json(const std::vector<GaussianBump>& bumps) {
  json a = json::array();
  for (const auto& b : bumps) a.push_back({b.amplitude, b.center, b.width});
  return a;
}

inline json config_json(const RunConfig& cfg) {
  json j;
  j["model"] = cfg.model == RunConfig::Model::ide ? "ide" : "pde";
  j["bumps"] = bumps_json(cfg.bumps);
  j["offset"] = cfg.offset;
  j["x_min"] = cfg.x_min;
  j["x_max"] = cfg.x_max;
  j["n_points"] = cfg.n_points;
  if (cfg.ic_constant)
    j["ic_constant"] = *cfg.ic_constant;
  else
    j["ic_constant"] = nullptr;
  j["ic_bumps"] = bumps_json(cfg.ic_bumps);
  j["beta"] = cfg.beta;
  j["dt"] = cfg.dt;
  j["t_final"] = cfg.t_final;
  j["dense_until"] = cfg.dense_until;
  j["sample_interval"] = cfg.sample_interval;
  j["splits"] = cfg.splits;
  j["snapshots"] = cfg.snapshots;
  j["sweep_eps"] = cfg.sweep_eps;
  j["ball_radius"] = cfg.ball_radius;
  j["checks"] = cfg.checks;
  return j;
}

inline json peaks_json(const std::vector<Peak>& peaks) {
  json a = json::array();
  for (const auto& p : peaks) {
    json e;
    e["location"] = p.location;
    e["value"] = p.value;
    e["hessian_eigenvalues"] = p.hessian_eigenvalues;
    e["zeta"] = zeta(p);
    e["interior"] = p.is_interior;
    e["stationary"] = p.is_stationary;
    a.push_back(e);
  }
  return a;
}

inline json check_json(const std::vector<CheckResult>& checks) {
  json a = json::array();
  for (const auto& c : checks) {
    json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["observed"] = c.observed;
    e["detail"] = c.detail;
    a.push_back(e);
  }
  return a;
}

inline json fit_json(const RateFit& f) {
  json e;
  e["kind"] = f.kind == RateFit::Kind::algebraic ? "algebraic" : "exponential";
  e["coefficient"] = f.coefficient;
  e["intercept"] = f.intercept;
  e["window_begin"] = f.window_begin;
  e["window_end"] = f.window_end;
  e["n_samples"] = f.n_samples;
  e["max_rel_deviation"] = f.max_rel_deviation;
  e["half_window_drift"] = f.half_window_drift;
  e["window_shrunk"] = f.window_shrunk;
  return e;
}

inline std::filesystem::path prepare_out_dir(const RunConfig& cfg, const RunOptions& opts) {
  const std::filesystem::path d = opts.out_dir.empty() ? cfg.out_dir : opts.out_dir;
  std::filesystem::create_directories(d);
  return d;
}

inline void write_summary(const std::filesystem::path& dir, const json& j) {
  std::ofstream f(dir / "summary.json");
  if (!f) throw config_error("cannot write " + (dir / "summary.json").string());
  f << j.dump(2) << "\n";
}

inline void write_trajectory_csv(const std::filesystem::path& dir, const Trajectory& tr) {
  std::vector<std::string> header = {"t", "rho"};
  const std::size_t n_regions = tr.region_mass.empty() ? 0 : tr.region_mass.front().size();
  for (std::size_t i = 0; i < n_regions; ++i)
    header.push_back("rho_" + std::to_string(i + 1));
  std::vector<std::vector<double>> rows;
  rows.reserve(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::vector<double> row = {tr.times[i], tr.rho[i]};
    row.insert(row.end(), tr.region_mass[i].begin(), tr.region_mass[i].end());
    rows.push_back(std::move(row));
  }
  write_csv((dir / "trajectory.csv").string(), header, rows);
}

inline void write_snapshot_csvs(const std::filesystem::path& dir, const Grid1D& g,
                                const Trajectory& tr) {
  for (const auto& s : tr.snapshots) {
    std::vector<std::vector<double>> rows;
    rows.reserve(s.density.size());
    for (int k = 0; k < g.n_points; ++k)
      rows.push_back({g.node(k), s.density[k]});
    write_csv((dir / ("snapshot_" + time_tag(s.time) + ".csv")).string(), {"x", "n"},
              rows);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// simulate + analyze + report (subcommands run / simulate-ide / simulate-pde)
// ---------------------------------------------------------------------------

inline RunOutput run_simulation(const RunConfig& cfg, const RunOptions& opts) {
  const Problem prob = build_problem(cfg);
  const Landscape& r = prob.landscape;
  const Grid1D& g = r.domain;
  const auto peaks = find_peaks(r);
  const double r_max = refined_max(r);
  const double r_min = grid_min(r);

  SamplingPlan plan;
  plan.dense_until = cfg.dense_until;
  plan.sample_interval = cfg.sample_interval;
  plan.split_points = cfg.splits;
  std::set<double> snaps(cfg.snapshots.begin(), cfg.snapshots.end());
  snaps.insert(cfg.t_final);  // the final state is always kept
  plan.snapshot_times.assign(snaps.begin(), snaps.end());

  Trajectory traj;
  if (cfg.model == RunConfig::Model::ide) {
    traj = simulate_ide(r, prob.n0, IdeOptions{cfg.dt, cfg.t_final, plan});
  } else {
    traj = simulate_pde(r, prob.n0, PdeOptions{cfg.beta, cfg.dt, cfg.t_final, plan});
  }
  const std::vector<double>& n_final = traj.snapshots.back().density;

  // Predictions from the landscape + initial datum alone.
  std::optional<WeightPrediction> weights;
  std::optional<SelectionResult> selection;
  std::string prediction_note;
  auto n0_at = [&](double x) {
    double v = cfg.ic_constant.value_or(0.0);
    for (const auto& b : cfg.ic_bumps) {
      const double u = x - b.center;
      v += b.amplitude * std::exp(-u * u / b.width);
    }
    return v;
  };
  if (!peaks.empty()) {
    try {
      weights = predict_weights(peaks, n0_at);
      selection = select_surviving_peak(r, peaks);
    } catch (const std::exception& e) {
      prediction_note = e.what();
    }
  } else {
    prediction_note = "no peaks detected";
  }

  std::optional<ConcentrationReport> conc;
  std::string conc_note;
  try {
    conc = concentration_report(g, n_final, peaks, cfg.ball_radius);
  } catch (const std::exception& e) {
    conc_note = e.what();
  }

  std::optional<RateFit> alg_fit;
  try {
    alg_fit = fit_algebraic(traj, r_max);
  } catch (const std::exception&) {
    // window too short; simply omitted from the summary
  }

  // Spectral comparison for diffusive runs.
  std::optional<SpectralPair> spectral;
  std::optional<RatePrediction> rate_pred;
  std::optional<RateFit> exp_fit;
  if (cfg.model == RunConfig::Model::pde && cfg.beta > 0) {
    spectral = solve_eigenpairs(r, cfg.beta);
    rate_pred = predicted_decay_rate(*spectral, g, prob.n0);
    try {
      exp_fit = fit_exponential(traj, -spectral->principal.lambda);
    } catch (const std::exception&) {
      // trajectory not in the exponential regime; omitted
    }
  }

  // ---- named checks --------------------------------------------------------
  RunOutput out;
  auto run_check = [&](const std::string& name, auto&& body) {
    CheckResult c;
    c.name = name;
    try {
      body(c);
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = e.what();
    }
    out.checks.push_back(c);
    out.all_passed = out.all_passed && c.passed;
  };

  const std::vector<double>* final_regions =
      traj.region_mass.empty() ? nullptr : &traj.region_mass.back();
  const double rho_final = traj.rho.back();

  if (opts.checks) {
    for (const std::string& name : cfg.checks) {
      if (name == "bounds") {
        run_check(name, [&](CheckResult& c) {
          const BoundsReport rep = apriori_bounds(traj, r_min, r_max);
          c.passed = rep.ok;
          c.observed = std::max(rep.lower - rep.min_rho, rep.max_rho - rep.upper);
          c.detail = "rho within [" + format_g17(rep.lower) + ", " +
                     format_g17(rep.upper) + "]";
        });
      } else if (name == "rate_algebraic") {
        run_check(name, [&](CheckResult& c) {
          const RateFit f = alg_fit ? *alg_fit : fit_algebraic(traj, r_max);
          c.observed = f.coefficient;
          c.passed = f.coefficient >= 0.45 && f.coefficient <= 0.55;
          c.detail = "(max r - rho) t averages " + format_g17(f.coefficient) +
                     " on the trailing window; expected in [0.45, 0.55]";
        });
      } else if (name == "weights") {
        run_check(name, [&](CheckResult& c) {
          if (!weights) throw config_error("no weight prediction: " + prediction_note);
          if (!final_regions || final_regions->size() != peaks.size())
            throw config_error("need one split region per peak for the weight check");
          double worst = 0.0;
          for (std::size_t i = 0; i < peaks.size(); ++i)
            worst = std::max(worst, std::abs((*final_regions)[i] / rho_final -
                                             weights->weights[i]));
          c.observed = worst;
          c.passed = worst <= 0.05;
          c.detail = "max |simulated - predicted| region weight = " + format_g17(worst);
        });
      } else if (name == "symmetric_masses") {
        run_check(name, [&](CheckResult& c) {
          if (!final_regions || final_regions->size() != 2)
            throw config_error("symmetric-mass check needs exactly one split");
          c.observed = std::abs((*final_regions)[0] - (*final_regions)[1]);
          c.passed = c.observed <= 0.02 * r_max;
          c.detail = "|rho_1 - rho_2| = " + format_g17(c.observed) + " vs 0.02 max r";
        });
      } else if (name == "rho_limit") {
        run_check(name, [&](CheckResult& c) {
          c.observed = std::abs(rho_final - r_max);
          c.passed = c.observed <= 0.05 * r_max;
          c.detail = "|rho(t_final) - max r| = " + format_g17(c.observed) +
                     " vs 0.05 max r";
        });
      } else if (name == "selection") {
        run_check(name, [&](CheckResult& c) {
          if (!selection || selection->status != SelectionResult::Status::unique)
            throw config_error("selection check needs a unique flattest peak");
          const Peak& win = peaks[selection->peak_indices.front()];
          const double total = trapezoid(g, n_final);
          const double ball = mass_on_interval(g, n_final, win.location - cfg.ball_radius,
                                               win.location + cfg.ball_radius) /
                              total;
          bool losers_ok = true;
          if (final_regions) {
            double lo = g.x_min;
            for (std::size_t j = 0; j < final_regions->size(); ++j) {
              const double hi = j < cfg.splits.size() ? cfg.splits[j] : g.x_max;
              const bool has_winner = win.location >= lo && win.location <= hi;
              if (!has_winner && (*final_regions)[j] > 0.15 * r_max) losers_ok = false;
              lo = hi;
            }
          }
          c.observed = ball;
          c.passed = ball >= 0.95 && losers_ok;
          c.detail = format_g17(100 * ball) + "% of the mass sits within " +
                     format_g17(cfg.ball_radius) + " of the flattest peak";
        });
      } else if (name == "concentration") {
        run_check(name, [&](CheckResult& c) {
          if (!conc) throw config_error("no concentration report: " + conc_note);
          c.observed = conc->off_peak;
          c.passed = conc->off_peak <= 0.01;
          c.detail = "off-peak mass fraction " + format_g17(conc->off_peak) + " vs 0.01";
        });
      }
    }
  }

  // ---- summary -------------------------------------------------------------
  json& j = out.summary;
  j["command"] = cfg.model == RunConfig::Model::ide ? "simulate-ide" : "simulate-pde";
  j["config"] = detail::config_json(cfg);
  j["grid"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"n_points", g.n_points},
               {"h", g.spacing()}};
  j["landscape"] = {{"id", r.id()}, {"r_max", r_max}, {"r_min_grid", r_min},
                    {"peaks", detail::peaks_json(peaks)}};

  json pred;
  if (weights) {
    pred["weights"] = weights->weights;
    pred["halved"] = weights->halved;
    pred["excluded"] = weights->excluded;
  }
  if (selection) {
    pred["surviving_peaks"] = selection->peak_indices;
    pred["selection_status"] =
        selection->status == SelectionResult::Status::unique ? "unique"
        : selection->status == SelectionResult::Status::symmetric_pair
            ? "symmetric_pair"
            : "indeterminate";
  }
  if (!prediction_note.empty()) pred["note"] = prediction_note;
  j["prediction"] = pred;

  json sim;
  sim["model"] = cfg.model == RunConfig::Model::ide ? "ide" : "pde";
  sim["beta"] = cfg.beta;
  sim["dt"] = traj.dt;
  if (traj.stability_bound)
    sim["stability_bound"] = *traj.stability_bound;
  else
    sim["stability_bound"] = nullptr;
  sim["t_final"] = traj.times.back();
  sim["samples"] = traj.size();
  sim["rho_final"] = rho_final;
  if (final_regions) sim["region_mass_final"] = *final_regions;
  if (conc) {
    sim["concentration"] = {{"radius", conc->radius}, {"fractions", conc->fractions},
                            {"off_peak", conc->off_peak}};
  }
  j["simulation"] = sim;

  json fits;
  if (alg_fit) fits["algebraic"] = detail::fit_json(*alg_fit);
  if (exp_fit) fits["exponential"] = detail::fit_json(*exp_fit);
  j["fits"] = fits;

  if (spectral) {
    json sp;
    sp["lambda"] = spectral->principal.lambda;
    sp["lambda2"] = spectral->second.lambda;
    sp["gamma"] = spectral->gamma;
    sp["degenerate"] = spectral->degenerate;
    sp["residual"] = spectral->principal.residual;
    sp["residual2"] = spectral->second.residual;
    if (rate_pred) {
      sp["rate_prediction"] = {{"rate", rate_pred->rate},
                               {"gate_value", rate_pred->gate_value},
                               {"gate_nonzero", rate_pred->gate_nonzero}};
    }
    j["spectral"] = sp;
  }

  j["checks"] = detail::check_json(out.checks);
  j["all_checks_passed"] = out.all_passed;

  out.out_dir = detail::prepare_out_dir(cfg, opts);
  detail::write_trajectory_csv(out.out_dir, traj);
  detail::write_snapshot_csvs(out.out_dir, g, traj);
  detail::write_summary(out.out_dir, j);
  return out;
}

// ---------------------------------------------------------------------------
// spectral solve at the configured beta (subcommand eigen)
// ---------------------------------------------------------------------------

inline RunOutput run_eigen(const RunConfig& cfg, const RunOptions& opts) {
  const Problem prob = build_problem(cfg);
  const Landscape& r = prob.landscape;
  const Grid1D& g = r.domain;
  if (!(cfg.beta > 0))
    throw config_error("the eigen command needs beta > 0 in the config");

  const SpectralPair sp = solve_eigenpairs(r, cfg.beta);
  const RatePrediction rp = predicted_decay_rate(sp, g, prob.n0);
  const auto peaks = find_peaks(r);
  const double tol = detail::residual_tol(r, cfg.beta);
  const auto rv = r.values_on_grid();
  const double r_max_grid = *std::max_element(rv.begin(), rv.end());

  std::vector<double> fractions;
  const double total = trapezoid(g, sp.principal.psi);
  for (const auto& p : peaks)
    fractions.push_back(mass_on_interval(g, sp.principal.psi, p.location - cfg.ball_radius,
                                         p.location + cfg.ball_radius) /
                        total);

  RunOutput out;
  auto add_check = [&](const std::string& name, bool passed, double observed,
                       const std::string& detail_str) {
    out.checks.push_back({name, passed, observed, detail_str});
    out.all_passed = out.all_passed && passed;
  };
  if (opts.checks) {
    add_check("residual", sp.principal.residual <= tol && sp.second.residual <= tol,
              std::max(sp.principal.residual, sp.second.residual),
              "eigen residuals vs tolerance " + format_g17(tol));
    add_check("spectral_bounds",
              sp.principal.lambda >= -r_max_grid - tol && sp.gamma <= 0.0,
              sp.principal.lambda,
              "lambda >= -max r and gamma <= 0");
  }

  json& j = out.summary;
  j["command"] = "eigen";
  j["config"] = detail::config_json(cfg);
  j["landscape"] = {{"id", r.id()}, {"r_max", refined_max(r)},
                    {"peaks", detail::peaks_json(peaks)}};
  j["spectral"] = {{"beta", cfg.beta},
                   {"lambda", sp.principal.lambda},
                   {"lambda2", sp.second.lambda},
                   {"gamma", sp.gamma},
                   {"degenerate", sp.degenerate},
                   {"residual", sp.principal.residual},
                   {"residual2", sp.second.residual},
                   {"iterations", sp.principal.iterations},
                   {"peak_fractions", fractions},
                   {"rate_prediction",
                    {{"rate", rp.rate},
                     {"gate_value", rp.gate_value},
                     {"gate_nonzero", rp.gate_nonzero}}}};
  j["checks"] = detail::check_json(out.checks);
  j["all_checks_passed"] = out.all_passed;

  out.out_dir = detail::prepare_out_dir(cfg, opts);
  std::vector<std::string> header = {"beta", "lambda", "lambda2", "gamma", "degenerate",
                                     "residual"};
  for (std::size_t i = 0; i < fractions.size(); ++i)
    header.push_back("frac_peak_" + std::to_string(i + 1));
  std::vector<double> row = {cfg.beta, sp.principal.lambda, sp.second.lambda, sp.gamma,
                             sp.degenerate ? 1.0 : 0.0, sp.principal.residual};
  row.insert(row.end(), fractions.begin(), fractions.end());
  write_csv((out.out_dir / "eigen.csv").string(), header, {row});

  std::vector<std::vector<double>> fn_rows;
  for (int k = 0; k < g.n_points; ++k)
    fn_rows.push_back({g.node(k), sp.principal.psi[k], sp.second.psi[k]});
  write_csv((out.out_dir / "eigenfunction.csv").string(), {"x", "psi", "psi2"}, fn_rows);
  detail::write_summary(out.out_dir, j);
  return out;
}

// ---------------------------------------------------------------------------
// vanishing-mutation sweep (subcommand sweep-eps)
// ---------------------------------------------------------------------------

inline RunOutput run_sweep(const RunConfig& cfg, const RunOptions& opts) {
  const Problem prob = build_problem(cfg);
  const Landscape& r = prob.landscape;
  if (cfg.sweep_eps.empty())
    throw config_error("the sweep-eps command needs a sweep_eps list in the config");

  const auto rows = epsilon_sweep(r, cfg.sweep_eps, cfg.ball_radius,
                                  std::max(1, opts.jobs));
  const auto peaks = find_peaks(r);
  const auto rv = r.values_on_grid();
  const double r_max_grid = *std::max_element(rv.begin(), rv.end());

  RunOutput out;
  auto add_check = [&](const std::string& name, bool passed, double observed,
                       const std::string& detail_str) {
    out.checks.push_back({name, passed, observed, detail_str});
    out.all_passed = out.all_passed && passed;
  };
  if (opts.checks) {
    // -lambda must increase strictly as eps decreases.
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows[a].eps > rows[b].eps; });
    bool monotone = true;
    double worst_gap = 0.0;
    for (std::size_t i = 1; i < order.size(); ++i) {
      const double prev = -rows[order[i - 1]].lambda;
      const double curr = -rows[order[i]].lambda;
      worst_gap = std::min(worst_gap, curr - prev);
      if (!(curr > prev)) monotone = false;
    }
    add_check("monotone", monotone, worst_gap,
              "-lambda strictly increases as eps decreases");

    bool resid_ok = true, bounds_ok = true;
    double worst_resid = 0.0;
    for (const auto& row : rows) {
      worst_resid = std::max(worst_resid, row.residual);
      if (row.residual > detail::residual_tol(r, row.eps)) resid_ok = false;
      if (!(row.lambda > -r_max_grid && row.lambda < 0)) bounds_ok = false;
    }
    add_check("residual", resid_ok, worst_resid, "all eigen residuals within tolerance");
    add_check("spectral_bounds", bounds_ok, 0.0, "all lambda in (-max r, 0)");
  }

  json& j = out.summary;
  j["command"] = "sweep-eps";
  j["config"] = detail::config_json(cfg);
  j["landscape"] = {{"id", r.id()}, {"r_max", refined_max(r)},
                    {"peaks", detail::peaks_json(peaks)}};
  json jr = json::array();
  for (const auto& row : rows) {
    jr.push_back({{"eps", row.eps},
                  {"lambda", row.lambda},
                  {"lambda2", row.lambda2},
                  {"gamma", row.gamma},
                  {"degenerate", row.degenerate},
                  {"residual", row.residual},
                  {"peak_fractions", row.peak_fractions}});
  }
  j["rows"] = jr;
  j["checks"] = detail::check_json(out.checks);
  j["all_checks_passed"] = out.all_passed;

  out.out_dir = detail::prepare_out_dir(cfg, opts);
  std::vector<std::string> header = {"eps", "lambda", "lambda2", "gamma", "degenerate",
                                     "residual"};
  for (std::size_t i = 0; i < peaks.size(); ++i)
    header.push_back("frac_peak_" + std::to_string(i + 1));
  std::vector<std::vector<double>> csv_rows;
  for (const auto& row : rows) {
    std::vector<double> cr = {row.eps, row.lambda, row.lambda2, row.gamma,
                              row.degenerate ? 1.0 : 0.0, row.residual};
    cr.insert(cr.end(), row.peak_fractions.begin(), row.peak_fractions.end());
    csv_rows.push_back(std::move(cr));
  }
  write_csv((out.out_dir / "eigen.csv").string(), header, csv_rows);
  detail::write_summary(out.out_dir, j);
  return out;
}

// ---------------------------------------------------------------------------
// prediction without simulation (subcommand predict)
// ---------------------------------------------------------------------------

inline RunOutput run_predict(const RunConfig& cfg, const RunOptions& opts) {
  const Problem prob = build_problem(cfg);
  const Landscape& r = prob.landscape;
  const auto peaks = find_peaks(r);
  if (peaks.empty())
    throw config_error("prediction needs a landscape with at least one positive peak");

  auto n0_at = [&](double x) {
    double v = cfg.ic_constant.value_or(0.0);
    for (const auto& b : cfg.ic_bumps) {
      const double u = x - b.center;
      v += b.amplitude * std::exp(-u * u / b.width);
    }
    return v;
  };
  const WeightPrediction w = predict_weights(peaks, n0_at);
  const SelectionResult sel = select_surviving_peak(r, peaks);

  RunOutput out;
  json& j = out.summary;
  j["command"] = "predict";
  j["config"] = detail::config_json(cfg);
  j["landscape"] = {{"id", r.id()}, {"r_max", refined_max(r)},
                    {"peaks", detail::peaks_json(peaks)}};
  j["prediction"] = {{"weights", w.weights},
                     {"halved", w.halved},
                     {"excluded", w.excluded},
                     {"surviving_peaks", sel.peak_indices},
                     {"selection_status",
                      sel.status == SelectionResult::Status::unique ? "unique"
                      : sel.status == SelectionResult::Status::symmetric_pair
                          ? "symmetric_pair"
                          : "indeterminate"}};
  j["checks"] = json::array();
  j["all_checks_passed"] = true;

  out.out_dir = detail::prepare_out_dir(cfg, opts);
  detail::write_summary(out.out_dir, j);
  return out;
}

}  // namespace selmut
