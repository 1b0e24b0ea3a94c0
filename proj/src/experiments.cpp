#include "cascade/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <set>

namespace cascade {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kEpsMax = 1.0 + std::numbers::sqrt2;

CaseSpec make_case(int atoms, double kappa, double epsilon = kNaN, std::string state = "auto") {
  CaseSpec c;
  c.atoms = atoms;
  c.kappa = kappa;
  if (!std::isnan(epsilon)) {
    c.epsilon = epsilon;
    c.has_epsilon = true;
  }
  c.state = std::move(state);
  return c;
}

std::string resolved_state(const CaseSpec& c) {
  if (c.state != "auto") return c.state;
  return c.atoms == 2 ? "bad_cavity" : "full";
}

std::string tag(const std::string& prefix, const CaseSpec& c, bool with_kappa, bool with_eps) {
  std::string s = prefix + "_N" + std::to_string(c.atoms);
  if (with_kappa) s += "_kappa" + format_number(c.kappa);
  if (with_eps) s += "_eps" + format_number(c.epsilon);
  return s;
}

CascadeParams params_of(const RunConfig& cfg, const CaseSpec& c, double epsilon) {
  CascadeParams p{cfg.g, epsilon, c.kappa};
  p.validate();
  return p;
}

double step_of(const RunConfig& cfg, const CascadeParams& p) { return cfg.dt > 0.0 ? cfg.dt : default_time_step(p); }

struct SteadyPoint {
  double p1 = kNaN, p0 = kNaN;
  double residual = kNaN, time = kNaN, trace_drift = kNaN, top_layer = kNaN;
  int error = 0;  // 0 converged, 1 horizon exhausted, 2 integrator abort
  std::string message;
  DensityMatrix atoms;  // photon traced out
};

SteadyPoint steady_point(const RunConfig& cfg, const CaseSpec& c, double epsilon) {
  SteadyPoint pt;
  const auto params = params_of(cfg, c, epsilon);
  if (!(params.kappa > 0.0)) throw ConfigError("steady state needs kappa > 0");
  const auto basis = build_basis(c.atoms, c.photon_cutoff());
  const auto l = build_liouvillian(basis, params);
  SteadyStateOptions opt;
  opt.dt = step_of(cfg, params);
  opt.horizon = cfg.horizon;
  opt.tolerance = cfg.tolerance;
  try {
    const auto ss = steady_state(l, DensityMatrix::projector(basis, {c.atoms, 0, 0, 0}), opt);
    const auto obs = measure(ss.state, epsilon);
    pt.p1 = obs.p1;
    pt.p0 = obs.p0;
    pt.residual = ss.residual;
    pt.time = ss.time;
    pt.trace_drift = ss.trace_drift;
    pt.top_layer = ss.top_layer_population;
    pt.atoms = trace_out_photon(ss.state);
  } catch (const ConvergenceError& e) {
    pt.error = 1;
    pt.residual = e.residual();
    pt.time = e.time();
    pt.message = e.what();
  } catch (const IntegrationError& e) {
    pt.error = 2;
    pt.time = e.time();
    pt.message = e.what();
  }
  return pt;
}

void require_cases(const RunConfig& cfg) {
  if (cfg.cases.empty()) throw ConfigError(cfg.experiment + ": no cases configured");
}

Json point_failure(double epsilon, const SteadyPoint& pt) {
  return Json{{"epsilon", epsilon}, {"error", pt.error}, {"message", pt.message}};
}

struct DriftSummary {
  double residual = 0.0, drift = 0.0, top_layer = 0.0;
  void add(const SteadyPoint& pt) {
    if (pt.error) return;
    residual = std::max(residual, pt.residual);
    drift = std::max(drift, pt.trace_drift);
    top_layer = std::max(top_layer, pt.top_layer);
  }
  Json json() const {
    return Json{{"max_residual", residual}, {"max_trace_drift", drift}, {"max_top_layer_population", top_layer}};
  }
};

std::string plot_script(const std::string& csv) {
  return "import csv\nimport matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n"
         "with open(\"" + csv + "\") as f:\n    rows = list(csv.reader(f))\nhead, data = rows[0], rows[1:]\n"
         "x = [float(r[0]) for r in data]\nfor j in range(1, len(head)):\n"
         "    plt.plot(x, [float(r[j]) for r in data], label=head[j])\n"
         "plt.xlabel(head[0])\nplt.legend()\nplt.savefig(\"" + csv.substr(0, csv.size() - 4) + ".png\", dpi=150)\n";
}

}  // namespace

// ---------------------------------------------------------------------------

EpsilonGrid::EpsilonGrid() : max(kEpsMax) {}

std::vector<double> EpsilonGrid::values() const {
  if (!explicit_values.empty()) return explicit_values;
  std::vector<double> v;
  if (points == 1) return {min};
  for (int i = 0; i < points; ++i) v.push_back(i == points - 1 ? max : min + (max - min) * i / (points - 1));
  return v;
}

void RunConfig::validate() const {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end())
    throw ConfigError("unknown experiment '" + experiment + "'");
  if (!(g > 0.0)) throw ConfigError("g must be > 0");
  if (dt < 0.0) throw ConfigError("dt must be > 0");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be > 0");
  if (!(sample_interval > 0.0)) throw ConfigError("sample_interval must be > 0");
  if (!(horizon > 0.0) || !(tolerance > 0.0)) throw ConfigError("horizon and tolerance must be > 0");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (grid.explicit_values.empty() && grid.points < 1) throw ConfigError("epsilon_grid.points must be >= 1");
  const bool uses_grid = experiment == "steady_sweep" || experiment == "negativity_sweep" || experiment == "nong_sweep";
  if (uses_grid)
    for (double e : grid.values())
      if (!(e >= 0.0 && e <= kEpsMax + 1e-12))
        throw ConfigError("epsilon grid value " + format_number(e) + " outside [0, 1 + sqrt(2)]");
  for (const auto& c : cases) {
    if (c.atoms < 1) throw ConfigError("N must be >= 1");
    if (c.kappa < 0.0) throw ConfigError("kappa must be >= 0");
    if (c.has_epsilon && c.epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
    if (c.state != "auto" && c.state != "full" && c.state != "bad_cavity")
      throw ConfigError("state must be auto, full or bad_cavity");
    const std::string st = resolved_state(c);
    if (experiment == "evolve") {
      if (!c.has_epsilon) throw ConfigError("evolve: each case needs epsilon");
      if (!(c.kappa > 0.0)) throw ConfigError("evolve: kappa must be > 0");
    }
    if (experiment == "steady_sweep" || experiment == "negativity_sweep") {
      if (c.atoms != 2 && c.atoms != 3) throw ConfigError(experiment + ": N must be 2 or 3");
      if ((experiment == "steady_sweep" || st == "full") && !(c.kappa > 0.0))
        throw ConfigError(experiment + ": kappa must be > 0 for full dynamics");
    }
    if (experiment == "negativity_sweep" || experiment == "nong_sweep")
      if (st == "bad_cavity" && c.atoms == 3) throw ConfigError("bad_cavity state needs N = 2");
    if (experiment == "nong_sweep") {
      if (c.atoms > 3 && c.atoms % 2 != 0) throw ConfigError("nong_sweep: N > 3 must be even");
      if (c.atoms <= 3 && c.atoms != 2 && c.atoms != 3) throw ConfigError("nong_sweep: N must be 2, 3 or even");
      if (c.atoms <= 3 && st == "full" && !(c.kappa > 0.0)) throw ConfigError("nong_sweep: kappa must be > 0");
    }
    if (experiment == "qubit_pair") {
      if (c.atoms % 2 != 0) throw ConfigError("qubit_pair: N must be even");
      if (c.p < 1 || 4 * c.p > c.atoms) throw ConfigError("qubit_pair: need 1 <= p <= N/4");
    }
  }
}

RunConfig preset_config(const std::string& preset, const std::string& experiment) {
  RunConfig cfg;
  cfg.preset = preset;
  cfg.experiment = experiment;
  if (preset == "fig1" || preset == "fig2") {
    if (experiment != "evolve") throw ConfigError(preset + " defines the evolve experiment only");
    cfg.cases = {make_case(2, 0.2, 0.3), make_case(3, 0.3, 0.5)};
    cfg.t_end = 200.0;
    cfg.sample_interval = 0.5;
  } else if (preset == "fig3") {
    if (experiment == "steady_sweep")
      cfg.cases = {make_case(2, 10.0), make_case(3, 0.8)};
    else if (experiment == "negativity_sweep")
      cfg.cases = {make_case(2, 10.0, kNaN, "bad_cavity"), make_case(3, 0.8, kNaN, "full")};
    else
      throw ConfigError("fig3 defines steady_sweep and negativity_sweep");
  } else if (preset == "fig4") {
    if (experiment != "nong_sweep") throw ConfigError("fig4 defines the nong_sweep experiment only");
    cfg.cases = {make_case(50, 0.0), make_case(2, 10.0, kNaN, "bad_cavity"), make_case(3, 0.8, kNaN, "full")};
  } else {
    throw ConfigError("unknown preset '" + preset + "' (expected fig1, fig2, fig3 or fig4)");
  }
  return cfg;
}

RunConfig config_from_json(const Json& j, RunConfig cfg) {
  static const std::set<std::string> top{"experiment", "preset", "cases", "epsilon_grid", "g", "dt", "t_end",
                                         "sample_interval", "horizon", "tolerance", "epsilon_floor", "output",
                                         "workers", "plot_script"};
  static const std::set<std::string> case_keys{"N", "kappa", "epsilon", "n_max", "p", "state"};
  static const std::set<std::string> grid_keys{"min", "max", "points", "values"};
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  try {
    for (const auto& [key, _] : j.items())
      if (!top.count(key)) throw ConfigError("config: unknown key '" + key + "'");
    if (j.contains("preset")) {
      const auto preset = j["preset"].get<std::string>();
      const auto experiment = j.value("experiment", cfg.experiment);
      cfg = preset_config(preset, experiment);
    }
    if (j.contains("experiment")) cfg.experiment = j["experiment"].get<std::string>();
    if (j.contains("cases")) {
      cfg.cases.clear();
      for (const auto& cj : j["cases"]) {
        for (const auto& [key, _] : cj.items())
          if (!case_keys.count(key)) throw ConfigError("config: unknown case key '" + key + "'");
        CaseSpec c;
        c.atoms = cj.at("N").get<int>();
        c.kappa = cj.value("kappa", 0.0);
        if (cj.contains("epsilon")) {
          c.epsilon = cj["epsilon"].get<double>();
          c.has_epsilon = true;
        }
        c.n_max = cj.value("n_max", -1);
        c.p = cj.value("p", -1);
        c.state = cj.value("state", std::string("auto"));
        cfg.cases.push_back(c);
      }
    }
    if (j.contains("epsilon_grid")) {
      const auto& gj = j["epsilon_grid"];
      for (const auto& [key, _] : gj.items())
        if (!grid_keys.count(key)) throw ConfigError("config: unknown epsilon_grid key '" + key + "'");
      cfg.grid.min = gj.value("min", cfg.grid.min);
      cfg.grid.max = gj.value("max", cfg.grid.max);
      cfg.grid.points = gj.value("points", cfg.grid.points);
      if (gj.contains("values")) cfg.grid.explicit_values = gj["values"].get<std::vector<double>>();
    }
    cfg.g = j.value("g", cfg.g);
    cfg.dt = j.value("dt", cfg.dt);
    cfg.t_end = j.value("t_end", cfg.t_end);
    cfg.sample_interval = j.value("sample_interval", cfg.sample_interval);
    cfg.horizon = j.value("horizon", cfg.horizon);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    cfg.epsilon_floor = j.value("epsilon_floor", cfg.epsilon_floor);
    cfg.output = j.value("output", cfg.output);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.plot_script = j.value("plot_script", cfg.plot_script);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

Json to_json(const RunConfig& cfg) {
  Json cases = Json::array();
  for (const auto& c : cfg.cases) {
    Json cj{{"N", c.atoms}, {"kappa", c.kappa}};
    if (c.has_epsilon) cj["epsilon"] = c.epsilon;
    cj["n_max"] = c.photon_cutoff();
    if (c.p >= 0) cj["p"] = c.p;
    cj["state"] = c.state;
    cases.push_back(std::move(cj));
  }
  Json grid{{"min", cfg.grid.min}, {"max", cfg.grid.max}, {"points", cfg.grid.points}};
  if (!cfg.grid.explicit_values.empty()) grid["values"] = cfg.grid.explicit_values;
  return Json{{"experiment", cfg.experiment}, {"preset", cfg.preset},     {"cases", cases},
              {"epsilon_grid", grid},         {"g", cfg.g},               {"dt", cfg.dt},
              {"t_end", cfg.t_end},           {"sample_interval", cfg.sample_interval},
              {"horizon", cfg.horizon},       {"tolerance", cfg.tolerance}, {"epsilon_floor", cfg.epsilon_floor},
              {"output", cfg.output},         {"workers", cfg.workers},   {"plot_script", cfg.plot_script}};
}

// ---------------------------------------------------------------------------

RunResult run_evolve(const RunConfig& cfg) {
  require_cases(cfg);
  RunResult result;
  const auto trajectories = parallel_map<Trajectory>(cfg.cases.size(), cfg.workers, [&](std::size_t i) {
    const auto& c = cfg.cases[i];
    const auto params = params_of(cfg, c, c.epsilon);
    const auto basis = build_basis(c.atoms, c.photon_cutoff());
    EvolveOptions opt;
    opt.dt = step_of(cfg, params);
    opt.t_end = cfg.t_end;
    opt.sample_interval = cfg.sample_interval;
    return evolve(build_liouvillian(basis, params), DensityMatrix::projector(basis, {c.atoms, 0, 0, 0}), opt);
  });
  Json runs = Json::array();
  for (std::size_t i = 0; i < cfg.cases.size(); ++i) {
    const auto& tr = trajectories[i];
    OutputTable out{tag("evolve", cfg.cases[i], true, true) + ".csv", {}};
    out.table.header = {"t", "N0", "N1", "N2", "Nph", "P0", "P1", "purity"};
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      const auto& s = tr.samples[k];
      out.table.add_row({tr.times[k], s.n0, s.n1, s.n2, s.nph, s.p0, s.p1, s.purity});
    }
    runs.push_back(Json{{"file", out.name},
                        {"max_trace_drift", tr.max_trace_drift},
                        {"max_top_layer_population", tr.max_top_layer_population},
                        {"top_layer_below_1e-8", tr.max_top_layer_population < 1e-8},
                        // Q = 2 n0 + n1 + n never grows and starts at 2N, so n <= 2N exactly
                        {"truncation_exact", cfg.cases[i].photon_cutoff() >= 2 * cfg.cases[i].atoms},
                        {"reduced_dimension", tr.reduced_dimension}});
    result.tables.push_back(std::move(out));
  }
  result.diagnostics["runs"] = std::move(runs);
  return result;
}

RunResult run_steady_sweep(const RunConfig& cfg) {
  require_cases(cfg);
  RunResult result;
  const auto grid = cfg.grid.values();
  Json runs = Json::array();
  for (const auto& c : cfg.cases) {
    const auto points = parallel_map<SteadyPoint>(grid.size(), cfg.workers,
                                                  [&](std::size_t i) { return steady_point(cfg, c, grid[i]); });
    OutputTable out{tag("steady", c, true, false) + ".csv", {}};
    out.table.header = {"epsilon", "P1", "P0", "P1_analytic", "residual", "convergence_time", "error"};
    DriftSummary summary;
    Json failures = Json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& pt = points[i];
      summary.add(pt);
      if (pt.error) failures.push_back(point_failure(grid[i], pt));
      const double analytic = c.atoms == 2 ? analytic_p1_n2(grid[i]) : kNaN;
      out.table.add_row({grid[i], pt.p1, pt.p0, analytic, pt.residual, pt.time, static_cast<double>(pt.error)});
    }
    Json run = summary.json();
    run["file"] = out.name;
    run["failed_points"] = std::move(failures);
    runs.push_back(std::move(run));
    result.tables.push_back(std::move(out));
  }
  result.diagnostics["runs"] = std::move(runs);
  return result;
}

RunResult run_negativity_sweep(const RunConfig& cfg) {
  require_cases(cfg);
  RunResult result;
  const auto grid = cfg.grid.values();
  Json runs = Json::array();
  struct Row {
    std::vector<double> values;
    SteadyPoint pt;
  };
  for (const auto& c : cfg.cases) {
    const bool bad_cavity = resolved_state(c) == "bad_cavity";
    const auto rows = parallel_map<Row>(grid.size(), cfg.workers, [&](std::size_t i) {
      const double e = grid[i];
      Row row;
      DensityMatrix rho;
      if (bad_cavity) {
        row.pt.p1 = analytic_p1_n2(e);
        rho = stationary_mixture(c.atoms, e, row.pt.p1);
      } else {
        row.pt = steady_point(cfg, c, e);
        if (row.pt.error) {
          row.values = {e, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
          return row;
        }
        rho = row.pt.atoms;
      }
      const auto report = ppt_report(rho);
      const double analytic = c.atoms == 2 ? analytic_negativity_n2(e).closed_form : kNaN;
      row.values = {e, row.pt.p1, report.min_per_slot[0], report.min_per_slot[1], report.min_per_slot[2], analytic,
                    report.min_eigenvalue - analytic};
      return row;
    });
    OutputTable out{tag("negativity", c, !bad_cavity, false) + ".csv", {}};
    out.table.header = {"epsilon", "P1", "A_min_slot0", "A_min_slot1", "A_min_slot2", "A_analytic", "delta"};
    DriftSummary summary;
    Json failures = Json::array();
    double max_delta = 0.0, max_moment_gap = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      summary.add(rows[i].pt);
      if (rows[i].pt.error) failures.push_back(point_failure(grid[i], rows[i].pt));
      if (!std::isnan(rows[i].values[6])) max_delta = std::max(max_delta, std::abs(rows[i].values[6]));
      if (c.atoms == 2) max_moment_gap = std::max(max_moment_gap, std::abs(analytic_negativity_n2(grid[i]).discrepancy));
      out.table.add_row(rows[i].values);
    }
    Json run = bad_cavity ? Json{{"state", "bad_cavity"}} : summary.json();
    run["file"] = out.name;
    if (c.atoms == 2) {
      run["max_abs_delta_vs_closed_form"] = max_delta;
      run["max_abs_gap_moment_form_vs_closed_form"] = max_moment_gap;
    }
    run["failed_points"] = std::move(failures);
    runs.push_back(std::move(run));
    result.tables.push_back(std::move(out));
  }
  result.diagnostics["runs"] = std::move(runs);
  return result;
}

RunResult run_nong_sweep(const RunConfig& cfg) {
  require_cases(cfg);
  RunResult result;
  const auto grid = cfg.grid.values();
  Json runs = Json::array();
  for (const auto& c : cfg.cases) {
    Json run;
    if (c.atoms > 3) {
      OutputTable out{tag("nong", c, false, false) + ".csv", {}};
      out.table.header = {"epsilon", "p_real", "p", "rounding_gap", "delta"};
      std::vector<double> kept, excluded;
      for (double e : grid) (e < cfg.epsilon_floor ? excluded : kept).push_back(e);
      const auto rows = parallel_map<std::vector<double>>(kept.size(), cfg.workers, [&](std::size_t i) {
        const double e = kept[i];
        const double p_real = p_from_epsilon(c.atoms, e);
        const int p = static_cast<int>(std::lround(p_real));
        return std::vector<double>{e, p_real, static_cast<double>(p), p - p_real,
                                   nong_subradiant_closed_form(c.atoms, p, e)};
      });
      double min_delta = INFINITY;
      for (const auto& r : rows) {
        min_delta = std::min(min_delta, r[4]);
        out.table.add_row(r);
      }
      run = Json{{"file", out.name}, {"path", "closed_form"}, {"min_delta", min_delta},
                 {"excluded_epsilon", excluded},
                 {"note", "eps below epsilon_floor excluded: the p -> N/2 state needs eps > 0"}};
      result.tables.push_back(std::move(out));
    } else {
      const bool bad_cavity = resolved_state(c) == "bad_cavity";
      struct Row {
        std::vector<double> values;
        SteadyPoint pt;
      };
      const auto rows = parallel_map<Row>(grid.size(), cfg.workers, [&](std::size_t i) {
        const double e = grid[i];
        Row row;
        if (bad_cavity) {
          row.pt.p1 = analytic_p1_n2(e);
        } else {
          row.pt = steady_point(cfg, c, e);
          if (row.pt.error) {
            row.values = {e, kNaN, kNaN, kNaN, kNaN, kNaN};
            return row;
          }
        }
        const auto ng = nong_stationary(c.atoms, e, row.pt.p1);
        row.values = {e, row.pt.p1, ng.delta_direct, ng.delta_printed, ng.mu_rho, ng.mu_tau};
        return row;
      });
      OutputTable out{tag("nong", c, !bad_cavity, false) + ".csv", {}};
      out.table.header = {"epsilon", "P1", "delta", "delta_printed", "mu_rho", "mu_tau"};
      DriftSummary summary;
      Json failures = Json::array();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        summary.add(rows[i].pt);
        if (rows[i].pt.error) failures.push_back(point_failure(grid[i], rows[i].pt));
        out.table.add_row(rows[i].values);
      }
      run = bad_cavity ? Json{{"state", "bad_cavity"}} : summary.json();
      run["file"] = out.name;
      run["path"] = "stationary_mixture";
      run["failed_points"] = std::move(failures);
      result.tables.push_back(std::move(out));
    }
    runs.push_back(std::move(run));
  }
  result.diagnostics["runs"] = std::move(runs);
  return result;
}

RunResult run_qubit_pair(const RunConfig& cfg) {
  RunConfig local = cfg;
  if (local.cases.empty()) {
    for (int p : {5, 10}) {
      CaseSpec c;
      c.atoms = 50;
      c.p = p;
      local.cases.push_back(c);
    }
  }
  RunResult result;
  const auto reports = parallel_map<Json>(local.cases.size(), cfg.workers, [&](std::size_t i) {
    const auto& c = local.cases[i];
    const auto pair = qubit_pair(c.atoms, c.p);
    const auto rep = delta_p(pair);
    Json j = qubit_pair_json(pair, rep);
    j["e_plus"] = rep.e_plus;
    j["e_minus"] = rep.e_minus;
    j["kbar0"] = rep.kbar0;
    j["kbar1"] = rep.kbar1;
    j["phi_overlap"] = std::abs(pair.phi_plus.dot(pair.phi_minus));
    return j;
  });
  result.documents.emplace_back("qubit_pair.json", Json(reports));
  return result;
}

RunResult run_experiment(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.experiment == "evolve") return run_evolve(cfg);
  if (cfg.experiment == "steady_sweep") return run_steady_sweep(cfg);
  if (cfg.experiment == "negativity_sweep") return run_negativity_sweep(cfg);
  if (cfg.experiment == "nong_sweep") return run_nong_sweep(cfg);
  if (cfg.experiment == "qubit_pair") return run_qubit_pair(cfg);
  return run_validate(cfg);
}

void write_outputs(const RunConfig& cfg, const RunResult& result) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output);
  fs::create_directories(dir);
  Json files = Json::array();
  for (const auto& t : result.tables) {
    write_text((dir / t.name).string(), t.table.str());
    files.push_back(t.name);
    if (cfg.plot_script) {
      const std::string script = "plot_" + t.name.substr(0, t.name.size() - 4) + ".py";
      write_text((dir / script).string(), plot_script(t.name));
    }
  }
  for (const auto& [name, doc] : result.documents) {
    write_json((dir / name).string(), doc);
    files.push_back(name);
  }
  Json versions{{"cascade", "1.0.0"},
                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION)},
                {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                      std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                {"compiler", __VERSION__}};
  Json run{{"config", to_json(cfg)}, {"versions", versions}, {"files", files},
           {"status", result.ok ? "ok" : "validation_failed"}, {"diagnostics", result.diagnostics}};
  write_json((dir / "run.json").string(), run);
}

}  // namespace cascade
