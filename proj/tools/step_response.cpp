// step-response: jump conditions, relaxation and regularized experiments for
// the nonlinear standard solid with an attached mass.
//
//   step-response <jump|relax|simulate|oracle|converge> [--config file] [overrides]
//
// Exit status: 0 success, 2 configuration error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stepresp/dynamics.hpp"
#include "stepresp/errors.hpp"
#include "stepresp/harness.hpp"
#include "stepresp/jump.hpp"
#include "stepresp/regularize.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string config_path;
  std::optional<double> x_jp;
  std::optional<double> eps_jp;
  std::optional<double> T;
  std::vector<int> n_list;
  std::optional<int> n;
  std::optional<std::string> force;
  std::optional<double> force_value;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::optional<double> dt;
  std::optional<std::string> output_dir;
  std::string out;  // CSV destination, stdout when empty
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file (defaults to the reference experiment)");
  cmd->add_option("--x-jp", o.x_jp, "target position after the jump");
  cmd->add_option("--eps-jp", o.eps_jp, "strain jump (jump, relax, oracle)");
  cmd->add_option("--T", o.T, "time horizon");
  cmd->add_option("--rel-tol", o.rel_tol, "integrator relative tolerance");
  cmd->add_option("--abs-tol", o.abs_tol, "integrator absolute tolerance");
  cmd->add_option("--dt", o.dt, "dense output spacing");
}

stepresp::ExperimentConfig resolve(const Overrides& o) {
  auto cfg = o.config_path.empty() ? stepresp::reference_config() : stepresp::load_config(o.config_path);
  if (o.x_jp) cfg.x_jp = *o.x_jp;
  if (o.eps_jp) cfg.eps_override = *o.eps_jp;
  if (o.T) cfg.T = *o.T;
  if (!o.n_list.empty()) cfg.n_list = o.n_list;
  if (o.n) cfg.force.n = *o.n;
  if (o.force) {
    if (*o.force == "experiment")
      cfg.force.kind = stepresp::ForceSpec::Kind::Experiment;
    else if (*o.force == "zero")
      cfg.force.kind = stepresp::ForceSpec::Kind::Zero;
    else if (*o.force == "constant")
      cfg.force.kind = stepresp::ForceSpec::Kind::Constant;
    else
      throw stepresp::ConfigError("--force must be experiment, zero or constant");
  }
  if (o.force_value) cfg.force.value = *o.force_value;
  if (o.rel_tol) cfg.integrator.rel_tol = *o.rel_tol;
  if (o.abs_tol) cfg.integrator.abs_tol = *o.abs_tol;
  if (o.dt) cfg.integrator.dense_output_dt = *o.dt;
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (!(cfg.T > 0.0)) throw stepresp::ConfigError("time span [0, T] is empty");
  cfg.model.validate();
  cfg.integrator.validate();
  return cfg;
}

template <class Writer>
void emit_csv(const Overrides& o, Writer&& write) {
  if (o.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw stepresp::ConfigError("cannot open output file " + o.out);
  write(file);
}

int cmd_jump(const Overrides& o) {
  const auto cfg = resolve(o);
  stepresp::JumpValues jv;
  if (cfg.eps_override) {
    // strain-driven jump: no mass motion data beyond the implied position
    const double x0 = cfg.model.x_eq * (1.0 + *cfg.eps_override);
    jv = stepresp::mass_jump_values(cfg.model, stepresp::SmoothSignal::constant(x0));
  } else {
    jv = stepresp::mass_jump_values(cfg.model, stepresp::SmoothSignal::constant(cfg.x_jp));
  }
  std::cout << stepresp::jump_to_json(jv).dump(2) << '\n';
  return 0;
}

int cmd_relax(const Overrides& o) {
  const auto cfg = resolve(o);
  const double eps = cfg.eps_jp();
  const double sigma0 = stepresp::strain_jump_stress(cfg.model, eps);
  const auto tr = stepresp::integrate_relaxation(cfg.model, stepresp::SmoothSignal::constant(eps), sigma0, 0.0, cfg.T,
                                                 cfg.integrator);
  emit_csv(o, [&](std::ostream& os) { stepresp::write_trajectory_csv(os, tr); });
  return 0;
}

int cmd_oracle(const Overrides& o) {
  const auto cfg = resolve(o);
  emit_csv(o, [&](std::ostream& os) { stepresp::write_oracle_csv(os, cfg); });
  return 0;
}

int cmd_simulate(const Overrides& o) {
  const auto cfg = resolve(o);
  stepresp::Trajectory tr;
  const stepresp::MassState rest{cfg.model.x_eq, 0.0, 0.0};
  switch (cfg.force.kind) {
    case stepresp::ForceSpec::Kind::Experiment:
      tr = stepresp::simulate_experiment(cfg, cfg.force.n);
      break;
    case stepresp::ForceSpec::Kind::Zero:
      tr = stepresp::integrate_mass(cfg.model, [](double) { return 0.0; }, rest, 0.0, cfg.T, cfg.integrator);
      break;
    case stepresp::ForceSpec::Kind::Constant: {
      const double level = cfg.force.value;
      tr = stepresp::integrate_mass(cfg.model, [level](double) { return level; }, rest, 0.0, cfg.T, cfg.integrator);
      break;
    }
  }
  emit_csv(o, [&](std::ostream& os) { stepresp::write_trajectory_csv(os, tr); });
  return 0;
}

int cmd_converge(const Overrides& o) {
  const auto cfg = resolve(o);
  const auto report = stepresp::run_convergence(cfg);
  std::cout << report.to_json().dump(2) << '\n';
  return report.all_ok() ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Step response of nonlinear spring-dashpot and mass-spring-dashpot systems", "step-response"};
  app.require_subcommand(1);

  Overrides o;
  auto* jump = app.add_subcommand("jump", "print the jump values at t = 0+ as JSON");
  auto* relax = app.add_subcommand("relax", "integrate the stress relaxation after a strain jump (CSV)");
  auto* simulate = app.add_subcommand("simulate", "integrate the mass system under a force (CSV)");
  auto* oracle = app.add_subcommand("oracle", "closed-form stress and force part f+ (CSV)");
  auto* converge = app.add_subcommand("converge", "regularized convergence study; writes CSV and summary JSON");
  for (auto* cmd : {jump, relax, simulate, oracle, converge}) add_common(cmd, o);
  for (auto* cmd : {relax, simulate, oracle}) cmd->add_option("--out", o.out, "CSV output file (default stdout)");
  simulate->add_option("--force", o.force, "experiment | zero | constant");
  simulate->add_option("--n", o.n, "smoothing index of the experiment force");
  simulate->add_option("--force-value", o.force_value, "level of a constant force");
  converge->add_option("--n-list", o.n_list, "smoothing indices, strictly increasing");
  converge->add_option("--output-dir", o.output_dir, "directory for trajectories and summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*jump) return cmd_jump(o);
    if (*relax) return cmd_relax(o);
    if (*oracle) return cmd_oracle(o);
    if (*simulate) return cmd_simulate(o);
    if (*converge) return cmd_converge(o);
  } catch (const stepresp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const stepresp::UnsupportedRegimeError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
