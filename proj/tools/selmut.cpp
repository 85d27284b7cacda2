// selmut: simulate selection / selection-mutation population dynamics on
// multi-peaked fitness landscapes, predict their long-time limits from the
// landscape alone, and cross-check the two.
//
// Exit codes: 0 all good, 1 at least one enabled check failed, 2 bad
// configuration or usage, 3 numerical failure (instability, non-convergence).

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "selmut/config.hpp"
#include "selmut/errors.hpp"
#include "selmut/presets.hpp"
#include "selmut/run.hpp"

namespace {

void print_outcome(const selmut::RunOutput& out) {
  for (const auto& c : out.checks)
    std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
  std::cout << "wrote " << (out.out_dir / "summary.json").string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"selection / selection-mutation dynamics and their long-time limits"};
  app.require_subcommand(1);

  std::string config_path, out_override, figure;
  bool run_checks = true;
  int jobs = 1;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    if (needs_config)
      sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_override, "output directory (overrides the config)");
    sub->add_flag("--check,!--no-check", run_checks,
                  "evaluate the configured pass/fail checks (default on)");
    sub->add_option("--jobs", jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    return sub;
  };

  auto* cmd_ide = add_common(
      app.add_subcommand("simulate-ide", "selection-only dynamics (no mutation)"), true);
  auto* cmd_pde = add_common(
      app.add_subcommand("simulate-pde", "selection-mutation dynamics"), true);
  auto* cmd_eigen = add_common(
      app.add_subcommand("eigen", "principal and second eigenpair at the configured beta"),
      true);
  auto* cmd_sweep = add_common(
      app.add_subcommand("sweep-eps", "eigenpairs across the configured mutation rates"),
      true);
  auto* cmd_predict = add_common(
      app.add_subcommand("predict", "long-time prediction from the landscape alone"),
      true);
  auto* cmd_run = add_common(
      app.add_subcommand("run", "simulate, analyze and report per the config"), true);
  auto* cmd_repro = add_common(
      app.add_subcommand("reproduce", "run a bundled experiment preset"), false);
  cmd_repro->add_option("figure", figure, "one of fig1, fig2, fig3, fig4")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    selmut::RunConfig cfg;
    if (cmd_repro->parsed()) {
      cfg = selmut::parse_config_string(selmut::preset_config(figure));
      if (out_override.empty()) out_override = "out_" + figure;
    } else {
      cfg = selmut::parse_config_file(config_path);
    }
    const selmut::RunOptions opts{run_checks, jobs, out_override};

    selmut::RunOutput out;
    if (cmd_ide->parsed()) {
      if (cfg.model != selmut::RunConfig::Model::ide)
        throw selmut::config_error("simulate-ide given a config with model = pde");
      out = selmut::run_simulation(cfg, opts);
    } else if (cmd_pde->parsed()) {
      if (cfg.model != selmut::RunConfig::Model::pde)
        throw selmut::config_error("simulate-pde given a config with model = ide");
      out = selmut::run_simulation(cfg, opts);
    } else if (cmd_eigen->parsed()) {
      out = selmut::run_eigen(cfg, opts);
    } else if (cmd_sweep->parsed()) {
      out = selmut::run_sweep(cfg, opts);
    } else if (cmd_predict->parsed()) {
      out = selmut::run_predict(cfg, opts);
    } else if (cmd_run->parsed() || cmd_repro->parsed()) {
      out = selmut::run_simulation(cfg, opts);
    }
    print_outcome(out);
    return out.all_passed ? 0 : 1;
  } catch (const selmut::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const selmut::instability_error& e) {
    std::cerr << "numerical instability: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
