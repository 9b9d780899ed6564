#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "stepresp/constitutive.hpp"
#include "stepresp/dynamics.hpp"
#include "stepresp/jump.hpp"

namespace stepresp {

/// External force used by `simulate`.
struct ForceSpec {
  enum class Kind { Experiment, Zero, Constant };
  Kind kind = Kind::Experiment;
  int n = 256;         // Experiment: smoothing index
  double value = 0.0;  // Constant: force level
};

/// Everything a run needs; read from a JSON document and overridable by flags.
struct ExperimentConfig {
  SpringDashpotModel model;
  double x_jp = 1.0;
  /// When set, the strain jump used by `jump`, `relax` and `oracle`;
  /// otherwise derived from x_jp.
  std::optional<double> eps_override;
  std::vector<int> n_list;
  double T = 1.0;
  IntegratorConfig integrator;
  std::string output_dir = "out";
  ForceSpec force;

  double eps_jp() const { return eps_override ? *eps_override : model.strain(x_jp); }

  /// Throws ConfigError. Requires a non-empty strictly increasing n_list of
  /// positive integers and T > 2 / min(n_list), so that every run has a
  /// non-empty evaluation window [2/n, T].
  void validate() const;
};

/// Mass-spring-dashpot parameters of the reference experiment:
/// x_eq = 1, m = 7, alpha = beta = sqrt(3), gamma = 5, mu1 = 1/10, series spring
/// scale 11, parallel spring modulus 3, x_jp = sqrt(2).
ExperimentConfig reference_config();

ConstitutiveFn constitutive_from_json(const nlohmann::json& j);
nlohmann::json constitutive_to_json(const ConstitutiveFn& g);

/// Fills fields present in `j` on top of `base`; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = reference_config());
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

struct ConvergenceRecord {
  int n = 0;
  bool ok = false;
  std::string error;
  double sigma_at_2_over_n = 0.0;
  double sigma_plus_at_2_over_n = 0.0;  // closed-form sigma+ at the same instant
  double x_sup_error = 0.0;             // sup over [2/n, T] of |x_n - x_jp|
  double v_sup_error = 0.0;             // sup over [2/n, T] of |v_n|
  double x_end_error = 0.0;             // |x_n(T) - x_jp|
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
};

struct ConvergenceReport {
  double predicted_sigma_jump = 0.0;
  double predicted_x_jump = 0.0;
  std::vector<ConvergenceRecord> runs;  // ordered by n

  bool all_ok() const;
  nlohmann::json to_json() const;
};

/// Response of the mass system, from rest at x_eq, to the regularized force F_n.
Trajectory simulate_experiment(const ExperimentConfig& cfg, int n);

/// Metrics of one regularized run against the exact step response.
ConvergenceRecord measure_run(const ExperimentConfig& cfg, int n, const Trajectory& tr);

/// Runs every n of the config (concurrently), collects metrics in n order.
/// With write_files, stores trajectory_n<n>.csv, summary.json and
/// config_echo.json in cfg.output_dir. A failed run is recorded and the study
/// continues.
ConvergenceReport run_convergence(const ExperimentConfig& cfg, bool write_files = true);

/// Header `t,x,v,sigma,F`, 15 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

/// Header `t,sigma,f_plus` for the closed-form response on [0, T].
void write_oracle_csv(std::ostream& os, const ExperimentConfig& cfg);

nlohmann::json jump_to_json(const JumpValues& jv);

}  // namespace stepresp
