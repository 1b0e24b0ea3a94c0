// cascade-sub <experiment> --config <file> [--out <dir>] [--workers K]
//
// Exit status: 0 success, 1 validation or run failure, 2 configuration error.

#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cascade/experiments.hpp"

namespace {

struct Overrides {
  std::optional<std::string> preset, out, state;
  std::optional<int> workers, atoms, n_max, p, grid_points;
  std::optional<double> kappa, epsilon, g, dt, t_end, sample_interval, horizon, tolerance, grid_min, grid_max;
  bool plot = false;
};

cascade::RunConfig build_config(const std::string& experiment, const std::string& config_path, const Overrides& o) {
  using namespace cascade;
  RunConfig cfg;
  cfg.experiment = experiment;
  if (o.preset) cfg = preset_config(*o.preset, experiment);
  if (!config_path.empty()) {
    Json j;
    try {
      j = read_json(config_path);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    if (o.preset) j.erase("preset");
    cfg = config_from_json(j, cfg);
  }
  if (!experiment.empty()) cfg.experiment = experiment;
  if (cfg.experiment.empty()) throw ConfigError("no experiment given");

  if ((o.atoms || o.kappa || o.epsilon || o.n_max || o.p || o.state) && cfg.cases.empty()) cfg.cases.emplace_back();
  for (auto& c : cfg.cases) {
    if (o.atoms) c.atoms = *o.atoms;
    if (o.kappa) c.kappa = *o.kappa;
    if (o.epsilon) {
      c.epsilon = *o.epsilon;
      c.has_epsilon = true;
    }
    if (o.n_max) c.n_max = *o.n_max;
    if (o.p) c.p = *o.p;
    if (o.state) c.state = *o.state;
  }
  if (o.g) cfg.g = *o.g;
  if (o.dt) cfg.dt = *o.dt;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.sample_interval) cfg.sample_interval = *o.sample_interval;
  if (o.horizon) cfg.horizon = *o.horizon;
  if (o.tolerance) cfg.tolerance = *o.tolerance;
  if (o.grid_min) cfg.grid.min = *o.grid_min;
  if (o.grid_max) cfg.grid.max = *o.grid_max;
  if (o.grid_points) cfg.grid.points = *o.grid_points;
  if (o.grid_min || o.grid_max || o.grid_points) cfg.grid.explicit_values.clear();
  if (o.out) cfg.output = *o.out;
  if (o.workers) cfg.workers = *o.workers;
  if (o.plot) cfg.plot_script = true;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subradiance in a three-level atomic cascade: dynamics, entanglement and non-Gaussianity sweeps"};
  std::string experiment, config_path;
  Overrides o;
  app.add_option("experiment", experiment,
                 "evolve | steady_sweep | negativity_sweep | nong_sweep | qubit_pair | validate");
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--preset", o.preset, "fig1 | fig2 | fig3 | fig4");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--workers", o.workers, "parallel workers for sweeps");
  app.add_option("--N", o.atoms, "atom number (all cases)");
  app.add_option("--kappa", o.kappa, "cavity damping in units of g (all cases)");
  app.add_option("--epsilon", o.epsilon, "coupling ratio of the second transition (all cases)");
  app.add_option("--n-max", o.n_max, "photon cutoff (all cases)");
  app.add_option("--p", o.p, "subradiant index for qubit_pair");
  app.add_option("--state", o.state, "auto | full | bad_cavity");
  app.add_option("--g", o.g, "coupling constant");
  app.add_option("--dt", o.dt, "RK4 step");
  app.add_option("--t-end", o.t_end, "evolution end time");
  app.add_option("--sample-interval", o.sample_interval, "trajectory sampling interval");
  app.add_option("--horizon", o.horizon, "steady-state time horizon");
  app.add_option("--tolerance", o.tolerance, "steady-state residual tolerance");
  app.add_option("--grid-min", o.grid_min, "epsilon grid start");
  app.add_option("--grid-max", o.grid_max, "epsilon grid end");
  app.add_option("--grid-points", o.grid_points, "epsilon grid size");
  app.add_flag("--plot", o.plot, "also write a matplotlib script per CSV");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cascade::RunConfig cfg;
  try {
    cfg = build_config(experiment, config_path, o);
  } catch (const cascade::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto result = cascade::run_experiment(cfg);
    cascade::write_outputs(cfg, result);
    for (const auto& t : result.tables) std::cout << cfg.output << "/" << t.name << "\n";
    for (const auto& d : result.documents) std::cout << cfg.output << "/" << d.first << "\n";
    if (!result.ok) {
      std::cerr << "validation failed (see " << cfg.output << "/run.json)\n";
      return 1;
    }
  } catch (const cascade::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cascade::IntegrationError& e) {
    std::cerr << "integration aborted: " << e.what() << " (t = " << e.time() << ", drift = " << e.drift() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
