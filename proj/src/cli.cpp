#include "fchs/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fchs/config.hpp"
#include "fchs/errors.hpp"
#include "fchs/runner.hpp"

namespace fchs {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;

const std::vector<std::string> kOverrideKeys = {"dim",   "n_points", "box_length", "s",         "nu",
                                                "alpha", "scheme",   "dt",         "cfl",       "t_end",
                                                "scenario", "amplitude", "seed",   "out_dir",   "checkpoint_stride"};

struct ConfigFlags {
  std::string config_path;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app, const std::vector<std::string>& keys) {
    app->add_option("--config", config_path, "key = value configuration file");
    for (const auto& key : keys) app->add_option("--" + key, values[key], "override '" + key + "'");
  }

  RunConfig build(CLI::App* app) const {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (values.count("dt") && app->count("--dt") && app->count("--cfl")) throw Error(ErrorCode::Config, "give exactly one of --dt and --cfl");
    for (const auto& [key, value] : values)
      if (app->count("--" + key)) set_config_value(cfg, key, value, "--" + key);
    return cfg;
  }
};

int report_blow_up(const BlowUpError& e) {
  std::cerr << "blow-up: " << e.what() << '\n';
  if (!e.checkpoint_path.empty()) std::cerr << "last good checkpoint: " << e.checkpoint_path << '\n';
  return kExitBlowUp;
}

int cmd_run(CLI::App* app, const ConfigFlags& flags, const std::string& resume) {
  const auto cfg = flags.build(app);
  std::optional<std::filesystem::path> from;
  if (!resume.empty()) from = resume;
  const auto result = run_simulation(cfg, from);
  const auto& last = result.records.back();
  std::cout << "steps " << result.steps << ", dt " << format_double(result.dt) << ", t " << format_double(last.t)
            << ", energy " << format_double(last.energy) << ", budget residual "
            << format_double(last.budget_residual) << '\n'
            << "diagnostics: " << result.csv_path.string() << '\n'
            << "checkpoint: " << result.checkpoint_path.string() << '\n';
  return kExitOk;
}

int cmd_verify() {
  bool ok = true;
  for (const auto& check : verification_suite()) {
    std::cout << (check.passed ? "PASS " : "FAIL ") << check.name << ": " << check.detail << '\n';
    ok = ok && check.passed;
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_convergence(CLI::App* app, const ConfigFlags& flags, const std::vector<double>& dts,
                    const ManufacturedOptions& opts) {
  const auto cfg = flags.build(app);
  std::optional<GridSpec> grid;
  std::optional<PhysParams> params;
  try {
    grid.emplace(cfg.grid());
    params.emplace(cfg.params());
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  std::vector<Scheme> schemes;
  if (app->count("--scheme")) schemes.push_back(cfg.scheme);
  else schemes = {Scheme::if_euler, Scheme::if_rk4};
  for (Scheme scheme : schemes) {
    const auto study = manufactured_run(*grid, *params, scheme, dts, opts);
    std::cout << scheme_name(scheme) << '\n';
    for (std::size_t i = 0; i < study.dts.size(); ++i)
      std::cout << "  dt " << format_double(study.dts[i]) << "  error " << format_double(study.errors[i]) << '\n';
    std::cout << "  order " << study.order << " (nominal " << scheme_order(scheme) << ")\n";
  }
  return kExitOk;
}

int cmd_sweep(CLI::App* app, const ConfigFlags& flags, const std::vector<double>& s_values,
              const std::vector<double>& alpha_values) {
  const auto cfg = flags.build(app);
  const auto points = sweep(cfg, s_values, alpha_values);
  bool any_blow_up = false;
  for (const auto& p : points) {
    std::cout << "s " << format_double(p.s) << " alpha " << format_double(p.alpha) << ": ";
    if (p.blew_up) std::cout << "blow-up (" << p.message << ")";
    else std::cout << p.rows << " rows";
    std::cout << " -> " << p.out_dir.string() << '\n';
    any_blow_up = any_blow_up || p.blew_up;
  }
  if (points.empty()) std::cout << "no parameter values given; nothing to run\n";
  return any_blow_up ? kExitBlowUp : kExitOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Fractional Camassa-Holm pseudo-spectral simulator"};
  app.require_subcommand(1);

  ConfigFlags run_flags;
  std::string resume;
  auto* run = app.add_subcommand("run", "integrate one configuration");
  run_flags.attach(run, kOverrideKeys);
  run->add_option("--resume", resume, "continue from a checkpoint (reads its .meta sidecar)");

  app.add_subcommand("verify", "run the identity and property checks");

  ConfigFlags conv_flags;
  std::vector<double> dts = {0.1, 0.05, 0.025};
  ManufacturedOptions mopts;
  auto* conv = app.add_subcommand("convergence", "manufactured-solution temporal convergence study");
  conv_flags.attach(conv, {"dim", "n_points", "box_length", "s", "nu", "alpha", "scheme"});
  conv->add_option("--dts", dts, "decreasing time steps")->capture_default_str();
  conv->add_option("--t_end", mopts.t_end, "final time")->capture_default_str();
  conv->add_option("--lambda", mopts.lambda, "decay rate of the target solution")->capture_default_str();

  ConfigFlags sweep_flags;
  std::vector<double> s_values;
  std::vector<double> alpha_values;
  auto* sw = app.add_subcommand("sweep", "run a grid of (s, alpha) values");
  sweep_flags.attach(sw, kOverrideKeys);
  sw->add_option("--s_values", s_values, "fractional orders");
  sw->add_option("--alpha_values", alpha_values, "filter widths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run, run_flags, resume);
    if (app.got_subcommand("verify")) return cmd_verify();
    if (*conv) return cmd_convergence(conv, conv_flags, dts, mopts);
    if (*sw) return cmd_sweep(sw, sweep_flags, s_values, alpha_values);
  } catch (const BlowUpError& e) {
    return report_blow_up(e);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == ErrorCode::Config ? kExitConfig : kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitFailed;
}

}  // namespace fchs
