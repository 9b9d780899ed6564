#include "stepresp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "stepresp/errors.hpp"
#include "stepresp/oracle.hpp"
#include "stepresp/regularize.hpp"

namespace stepresp {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(fmt::format("{}: expected a JSON object", where));
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
}

double number(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw ConfigError(fmt::format("{}: missing '{}'", where, key));
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(fmt::format("{}: '{}' must be a number", where, key));
  return v.get<double>();
}

template <class T>
void read_if(const json& j, const char* key, T& out, const char* where) {
  if (!j.contains(key)) return;
  if constexpr (std::is_same_v<T, double>) {
    out = number(j, key, where);
  } else {
    try {
      out = j.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(fmt::format("{}: bad value for '{}': {}", where, key, e.what()));
    }
  }
}

std::string fmt_num(double v) { return fmt::format("{:.15g}", v); }

}  // namespace

ConstitutiveFn constitutive_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
    throw ConfigError("constitutive function needs a string 'family'");
  const auto family = j.at("family").get<std::string>();
  if (family == "linear") {
    check_keys(j, {"family", "k"}, "linear law");
    return ConstitutiveFn::linear(number(j, "k", "linear law"));
  }
  if (family == "exp") {
    check_keys(j, {"family", "a", "c"}, "exp law");
    return ConstitutiveFn::exp_saturating(number(j, "a", "exp law"), number(j, "c", "exp law"));
  }
  if (family == "cubic") {
    check_keys(j, {"family", "E", "gamma"}, "cubic law");
    return ConstitutiveFn::cubic_stiffening(number(j, "E", "cubic law"), number(j, "gamma", "cubic law"));
  }
  throw ConfigError(fmt::format("unknown constitutive family '{}' (expected linear, exp or cubic)", family));
}

json constitutive_to_json(const ConstitutiveFn& g) {
  if (const auto* p = g.as_linear()) return {{"family", "linear"}, {"k", p->k}};
  if (const auto* p = g.as_exp()) return {{"family", "exp"}, {"a", p->a}, {"c", p->c}};
  if (const auto* p = g.as_cubic()) return {{"family", "cubic"}, {"E", p->modulus}, {"gamma", p->gamma}};
  throw ConfigError("custom constitutive functions cannot be serialized");
}

void ExperimentConfig::validate() const {
  model.validate();
  integrator.validate();
  if (!std::isfinite(x_jp)) throw ConfigError("x_jp must be finite");
  if (eps_override && !std::isfinite(*eps_override)) throw ConfigError("eps_jp must be finite");
  if (n_list.empty()) throw ConfigError("n_list must not be empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw ConfigError(fmt::format("n_list entries must be positive, got {}", n_list[i]));
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw ConfigError("n_list must be strictly increasing");
  }
  if (!(T > 2.0 / n_list.front()))
    throw ConfigError(fmt::format("T = {} must exceed 2/n = {} for the smallest n", T, 2.0 / n_list.front()));
  if (force.kind == ForceSpec::Kind::Experiment && force.n < 1) throw ConfigError("force.n must be positive");
}

ExperimentConfig reference_config() {
  const double alpha = std::sqrt(3.0);
  ExperimentConfig cfg;
  cfg.model.dashpot = ConstitutiveFn::exp_saturating(alpha, 0.1);
  cfg.model.series_spring = ConstitutiveFn::exp_saturating(alpha, 11.0);
  cfg.model.parallel_spring = ConstitutiveFn::cubic_stiffening(3.0, 5.0);
  cfg.model.mass = 7.0;
  cfg.model.x_eq = 1.0;
  cfg.x_jp = std::sqrt(2.0);
  cfg.n_list = {4, 16, 64, 256};
  cfg.T = 1.0;
  cfg.output_dir = "out";
  return cfg;
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig cfg) {
  constexpr const char* where = "config";
  check_keys(j, {"model", "x_jp", "eps_jp", "n_list", "T", "integrator", "output_dir", "force"}, where);
  if (j.contains("model")) {
    const auto& m = j.at("model");
    check_keys(m, {"dashpot", "series_spring", "parallel_spring", "mass", "x_eq"}, "model");
    if (m.contains("dashpot")) cfg.model.dashpot = constitutive_from_json(m.at("dashpot"));
    if (m.contains("series_spring")) cfg.model.series_spring = constitutive_from_json(m.at("series_spring"));
    if (m.contains("parallel_spring")) cfg.model.parallel_spring = constitutive_from_json(m.at("parallel_spring"));
    read_if(m, "mass", cfg.model.mass, "model");
    read_if(m, "x_eq", cfg.model.x_eq, "model");
  }
  read_if(j, "x_jp", cfg.x_jp, where);
  if (j.contains("eps_jp")) cfg.eps_override = number(j, "eps_jp", where);
  read_if(j, "n_list", cfg.n_list, where);
  read_if(j, "T", cfg.T, where);
  read_if(j, "output_dir", cfg.output_dir, where);
  if (j.contains("integrator")) {
    const auto& ij = j.at("integrator");
    check_keys(ij, {"rel_tol", "abs_tol", "h_init", "h_min", "h_max", "dense_output_dt"}, "integrator");
    read_if(ij, "rel_tol", cfg.integrator.rel_tol, "integrator");
    read_if(ij, "abs_tol", cfg.integrator.abs_tol, "integrator");
    read_if(ij, "h_init", cfg.integrator.h_init, "integrator");
    read_if(ij, "h_min", cfg.integrator.h_min, "integrator");
    read_if(ij, "h_max", cfg.integrator.h_max, "integrator");
    read_if(ij, "dense_output_dt", cfg.integrator.dense_output_dt, "integrator");
  }
  if (j.contains("force")) {
    const auto& fj = j.at("force");
    check_keys(fj, {"kind", "n", "value"}, "force");
    std::string kind = "experiment";
    read_if(fj, "kind", kind, "force");
    if (kind == "experiment")
      cfg.force.kind = ForceSpec::Kind::Experiment;
    else if (kind == "zero")
      cfg.force.kind = ForceSpec::Kind::Zero;
    else if (kind == "constant")
      cfg.force.kind = ForceSpec::Kind::Constant;
    else
      throw ConfigError(fmt::format("force: unknown kind '{}' (expected experiment, zero or constant)", kind));
    read_if(fj, "n", cfg.force.n, "force");
    read_if(fj, "value", cfg.force.value, "force");
  }
  cfg.model.validate();
  cfg.integrator.validate();
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["model"] = {{"dashpot", constitutive_to_json(cfg.model.dashpot)},
                {"series_spring", constitutive_to_json(cfg.model.series_spring)},
                {"parallel_spring", constitutive_to_json(cfg.model.parallel_spring)},
                {"mass", cfg.model.mass},
                {"x_eq", cfg.model.x_eq}};
  j["x_jp"] = cfg.x_jp;
  if (cfg.eps_override) j["eps_jp"] = *cfg.eps_override;
  j["n_list"] = cfg.n_list;
  j["T"] = cfg.T;
  j["integrator"] = {{"rel_tol", cfg.integrator.rel_tol},   {"abs_tol", cfg.integrator.abs_tol},
                     {"h_init", cfg.integrator.h_init},     {"h_min", cfg.integrator.h_min},
                     {"h_max", cfg.integrator.h_max},       {"dense_output_dt", cfg.integrator.dense_output_dt}};
  j["output_dir"] = cfg.output_dir;
  switch (cfg.force.kind) {
    case ForceSpec::Kind::Experiment: j["force"] = {{"kind", "experiment"}, {"n", cfg.force.n}}; break;
    case ForceSpec::Kind::Zero: j["force"] = {{"kind", "zero"}}; break;
    case ForceSpec::Kind::Constant: j["force"] = {{"kind", "constant"}, {"value", cfg.force.value}}; break;
  }
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
  return config_from_json(j);
}

bool ConvergenceReport::all_ok() const {
  return std::all_of(runs.begin(), runs.end(), [](const ConvergenceRecord& r) { return r.ok; });
}

json ConvergenceReport::to_json() const {
  json runs_j = json::array();
  for (const auto& r : runs) {
    json rj = {{"n", r.n}, {"ok", r.ok}};
    if (r.ok) {
      rj["sigma_at_2_over_n"] = r.sigma_at_2_over_n;
      rj["sigma_plus_at_2_over_n"] = r.sigma_plus_at_2_over_n;
      rj["x_sup_error"] = r.x_sup_error;
      rj["v_sup_error"] = r.v_sup_error;
      rj["x_end_error"] = r.x_end_error;
    } else {
      rj["error"] = r.error;
    }
    rj["steps_accepted"] = r.steps_accepted;
    rj["steps_rejected"] = r.steps_rejected;
    runs_j.push_back(std::move(rj));
  }
  return {{"predicted_sigma_jump", predicted_sigma_jump}, {"predicted_x_jump", predicted_x_jump}, {"runs", runs_j}};
}

Trajectory simulate_experiment(const ExperimentConfig& cfg, int n) {
  const SmoothHeaviside hs(n);
  const ExperimentForce force(cfg.model, cfg.model.strain(cfg.x_jp), cfg.x_jp, hs);
  const double probe = 2.0 / n;
  MassIntegrationOptions opts;
  opts.window = {hs.width(), hs.width() / 20.0};
  opts.extra_times = std::span<const double>(&probe, 1);
  IntegratorConfig icfg = cfg.integrator;
  icfg.h_init = std::min(icfg.h_init, opts.window.h_max);
  icfg.h_min = std::min(icfg.h_min, icfg.h_init);
  return integrate_mass(
      cfg.model, [&force](double t) { return force(t); }, MassState{cfg.model.x_eq, 0.0, 0.0}, 0.0, cfg.T, icfg, opts);
}

ConvergenceRecord measure_run(const ExperimentConfig& cfg, int n, const Trajectory& tr) {
  ConvergenceRecord rec;
  rec.n = n;
  rec.steps_accepted = tr.stats.accepted;
  rec.steps_rejected = tr.stats.rejected;
  const double probe = 2.0 / n;
  const auto& s = tr.samples;
  const auto it = std::min_element(s.begin(), s.end(), [probe](const TrajectorySample& a, const TrajectorySample& b) {
    return std::abs(a.t - probe) < std::abs(b.t - probe);
  });
  if (it == s.end() || std::abs(it->t - probe) > 1e-12 * std::max(1.0, cfg.T))
    throw NumericalError(fmt::format("trajectory has no sample at t = 2/n = {}", probe));
  rec.sigma_at_2_over_n = it->state.sigma;
  rec.sigma_plus_at_2_over_n = sigma_plus_closed(ExpCaseParams::from_model(cfg.model), cfg.model.strain(cfg.x_jp), probe);
  for (auto w = it; w != s.end(); ++w) {
    rec.x_sup_error = std::max(rec.x_sup_error, std::abs(w->state.x - cfg.x_jp));
    rec.v_sup_error = std::max(rec.v_sup_error, std::abs(w->state.v));
  }
  rec.x_end_error = std::abs(s.back().state.x - cfg.x_jp);
  rec.ok = true;
  return rec;
}

ConvergenceReport run_convergence(const ExperimentConfig& cfg, bool write_files) {
  cfg.validate();
  ExpCaseParams::from_model(cfg.model);  // regime check before any work

  ConvergenceReport report;
  report.predicted_sigma_jump = strain_jump_stress(cfg.model, cfg.model.strain(cfg.x_jp));
  report.predicted_x_jump = cfg.x_jp;

  struct Outcome {
    ConvergenceRecord record;
    Trajectory trajectory;
  };
  std::vector<std::future<Outcome>> jobs;
  for (int n : cfg.n_list) {
    jobs.push_back(std::async(std::launch::async, [&cfg, n] {
      Outcome o;
      o.record.n = n;
      try {
        o.trajectory = simulate_experiment(cfg, n);
        o.record = measure_run(cfg, n, o.trajectory);
      } catch (const std::exception& e) {
        o.record.ok = false;
        o.record.error = e.what();
      }
      return o;
    }));
  }

  if (write_files) std::filesystem::create_directories(cfg.output_dir);
  for (auto& job : jobs) {
    Outcome o = job.get();
    if (write_files && o.record.ok) {
      std::ofstream csv(std::filesystem::path(cfg.output_dir) / fmt::format("trajectory_n{}.csv", o.record.n));
      write_trajectory_csv(csv, o.trajectory);
    }
    report.runs.push_back(std::move(o.record));
  }

  if (write_files) {
    std::ofstream summary(std::filesystem::path(cfg.output_dir) / "summary.json");
    summary << report.to_json().dump(2) << '\n';
    json echo = config_to_json(cfg);
    echo["artifact_decisions"] = {
        {"T", "time horizon chosen by this tool; not reported with the reference experiment"},
        {"n_list", "smoothing indices chosen by this tool; not reported with the reference experiment"},
        {"integrator", "RKF45 tolerances chosen by this tool; h <= 1/(20 n) enforced on [0, 1/n]"},
    };
    std::ofstream echo_file(std::filesystem::path(cfg.output_dir) / "config_echo.json");
    echo_file << echo.dump(2) << '\n';
  }
  return report;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,x,v,sigma,F\n";
  for (const auto& s : tr.samples)
    os << fmt_num(s.t) << ',' << fmt_num(s.state.x) << ',' << fmt_num(s.state.v) << ',' << fmt_num(s.state.sigma)
       << ',' << fmt_num(s.force) << '\n';
}

void write_oracle_csv(std::ostream& os, const ExperimentConfig& cfg) {
  const ExpCaseParams p = ExpCaseParams::from_model(cfg.model);
  const double eps = cfg.eps_jp();
  os << "t,sigma,f_plus\n";
  for (double t : output_times(0.0, cfg.T, cfg.integrator.dense_output_dt, {}))
    os << fmt_num(t) << ',' << fmt_num(sigma_plus_closed(p, eps, t)) << ',' << fmt_num(f_plus_quadrature(p, eps, t))
       << '\n';
}

json jump_to_json(const JumpValues& jv) {
  return {{"sigma0", jv.sigma0}, {"f0", jv.f0}, {"g0", jv.g0}, {"eps_jp", jv.eps_jp}};
}

}  // namespace stepresp
