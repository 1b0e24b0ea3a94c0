#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cascade/io.hpp"

namespace cascade {

/// Malformed or out-of-domain run configuration (CLI exit status 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// One physical setting. Unset fields fall back per experiment: n_max = 2N,
/// state = "bad_cavity" for N = 2 and "full" otherwise.
struct CaseSpec {
  int atoms = 2;
  double kappa = 0.0;
  double epsilon = 0.0;
  bool has_epsilon = false;
  int n_max = -1;
  int p = -1;
  std::string state = "auto";  // "auto" | "full" | "bad_cavity"

  int photon_cutoff() const { return n_max >= 0 ? n_max : 2 * atoms; }
};

struct EpsilonGrid {
  double min = 0.0;
  double max = 0.0;  // set to 1 + sqrt(2) by the constructor
  int points = 121;
  std::vector<double> explicit_values;  // overrides min/max/points when non-empty

  EpsilonGrid();
  std::vector<double> values() const;
};

struct RunConfig {
  std::string experiment;
  std::string preset;
  std::vector<CaseSpec> cases;
  EpsilonGrid grid;
  double g = 1.0;
  double dt = 0.0;  // 0 selects the default step for each case
  double t_end = 200.0;
  double sample_interval = 0.5;
  double horizon = 1e9;
  double tolerance = 1e-10;
  double epsilon_floor = 0.01;  // closed-form nonG sweep skips eps below this
  std::string output = ".";
  int workers = 1;
  bool plot_script = false;

  /// Throws ConfigError.
  void validate() const;
};

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"evolve", "steady_sweep", "negativity_sweep",
                                              "nong_sweep", "qubit_pair", "validate"};
  return names;
}

/// Parameter sets of the figures: fig1/fig2 (time evolution), fig3
/// (stationary P_1 and negativity), fig4 (non-Gaussianity). `experiment`
/// picks the preset's case list for that experiment.
RunConfig preset_config(const std::string& preset, const std::string& experiment);

/// Overlay the keys present in `j` on `base`. Unknown keys are errors.
RunConfig config_from_json(const Json& j, RunConfig base = {});
Json to_json(const RunConfig& config);

struct OutputTable {
  std::string name;  // file name inside the output directory
  CsvTable table;
};

struct RunResult {
  std::vector<OutputTable> tables;
  std::vector<std::pair<std::string, Json>> documents;
  Json diagnostics = Json::object();
  bool ok = true;  // false marks a validation failure
};

RunResult run_evolve(const RunConfig& config);
RunResult run_steady_sweep(const RunConfig& config);
RunResult run_negativity_sweep(const RunConfig& config);
RunResult run_nong_sweep(const RunConfig& config);
RunResult run_qubit_pair(const RunConfig& config);
RunResult run_validate(const RunConfig& config);
RunResult run_experiment(const RunConfig& config);

/// CSV tables, JSON documents, run.json and (optionally) plot scripts.
void write_outputs(const RunConfig& config, const RunResult& result);

/// Evaluate fn(i) for i in [0, n) on up to `workers` threads; results keep
/// input order. The first exception (lowest index) is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int workers, F fn);

}  // namespace cascade

#include "cascade/detail/parallel.hpp"
