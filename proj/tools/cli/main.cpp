#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>

#include "pointnls_io/config.hpp"
#include "pointnls_io/oracle.hpp"
#include "pointnls_io/runner.hpp"

using namespace pointnls;
using namespace pointnls::io;

namespace {

int run_cmd(const std::string& path, const Overrides& o) {
  const RunConfig cfg = load_run_config(path, o);
  const RunOutcome r = run(cfg);
  std::printf("status: %s\n", r.status.c_str());
  if (const auto* b = std::get_if<BlowUp>(&r.trajectory.status))
    std::printf("blow-up in [%s, %s] (%s)\n", fmt(b->t_lower).c_str(), fmt(b->t_detect).c_str(), b->criterion.c_str());
  if (const auto* s = std::get_if<Stalled>(&r.trajectory.status))
    std::fprintf(stderr, "stalled at step %zu: %s\n", s->step, s->reason.c_str());
  if (r.classification) std::printf("verdict: %s\n", to_string(r.classification->verdict).c_str());
  std::printf("output: %s\n", r.directory.c_str());
  return r.exit_code;
}

int sweep_cmd(const std::string& path, const Overrides& o) {
  const SweepConfig cfg = load_sweep_config(path, o);
  const SweepSummary s = sweep(cfg);
  std::size_t errors = 0;
  for (const auto& row : s.rows) {
    if (row.outcome == "Error") {
      ++errors;
      std::fprintf(stderr, "%s: %s\n", row_key(cfg, row.coords).c_str(), row.error.c_str());
    }
  }
  std::printf("rows: %zu (resumed %zu, errors %zu)\n", s.rows.size(), s.resumed, errors);
  std::printf("decided: %zu, agreeing: %zu\n", s.decided, s.agreeing);
  std::printf("output: %s\n", s.directory.c_str());
  return kOk;
}

int validate_cmd(const std::string& path, const Overrides& o) {
  if (config_kind_of_file(path) == ConfigKind::Run) {
    const RunConfig c = load_run_config(path, o);
    std::printf("valid run config '%s'\n", c.name.c_str());
  } else {
    const SweepConfig c = load_sweep_config(path, o);
    std::printf("valid sweep config '%s' (%zu points)\n", c.name.c_str(), c.points().size());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point-nonlinearity NLS solver"};
  app.require_subcommand(1);

  std::string config;
  Overrides o;
  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("config", config, "YAML config file")->required();
    sub->add_option_function<double>("--dt", [&](double v) { o.dt = v; }, "time step");
    sub->add_option_function<double>("--T", [&](double v) { o.T = v; }, "final time");
    sub->add_option_function<std::string>("--out", [&](const std::string& v) { o.out = v; }, "output directory");
    sub->add_option_function<unsigned>("--threads", [&](unsigned v) { o.threads = v; }, "worker threads");
  };
  CLI::App* run_app = app.add_subcommand("run", "solve one configuration");
  add_overrides(run_app);
  CLI::App* sweep_app = app.add_subcommand("sweep", "run a parameter sweep");
  add_overrides(sweep_app);
  CLI::App* validate_app = app.add_subcommand("validate", "check a config without running it");
  add_overrides(validate_app);

  CLI::App* oracle_app = app.add_subcommand("oracle", "print closed-form reference values");
  std::string oracle_name;
  std::map<std::string, double> params;
  oracle_app->add_option("name", oracle_name, "one of: exponents, gaussian, linear_gaussian, standing_wave")
      ->required();
  oracle_app->add_option_function<double>("--p", [&](double v) { params["p"] = v; }, "power");
  oracle_app->add_option_function<double>("--A", [&](double v) { params["A"] = v; }, "Gaussian amplitude");
  oracle_app->add_option_function<double>("--t", [&](double v) { params["t"] = v; }, "time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (run_app->parsed()) return run_cmd(config, o);
    if (sweep_app->parsed()) return sweep_cmd(config, o);
    if (validate_app->parsed()) return validate_cmd(config, o);
    if (oracle_app->parsed()) {
      std::cout << oracle(oracle_name, params).dump(2) << "\n";
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 1;
}
