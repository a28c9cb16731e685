#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polysum/commands.hpp"
#include "polysum/errors.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  polysum::CliOverrides overrides;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Path to a JSON experiment config");
  cmd->add_option("--seed", args.overrides.seed, "Master seed (overrides config)");
  cmd->add_option("--out", args.overrides.out, "Output directory (overrides config)");
  cmd->add_option("--threads", args.overrides.threads, "Worker threads (0 = all)");
  cmd->add_option("--n", args.overrides.n, "Polynomial degree (overrides config)");
  cmd->add_option("--trials", args.overrides.trials, "Trial count (overrides config)");
  cmd->add_option("--grid-h", args.overrides.grid_h, "Grid spacing (overrides config)");
}

polysum::ExperimentConfig make_config(const CommonArgs& args) {
  if (!args.config_path.empty())
    return polysum::load_config(args.config_path, args.overrides);
  return polysum::config_from_overrides(args.overrides);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and prediction of zeros of sums of random polynomials"};
  app.require_subcommand(1);

  CommonArgs args;
  using Command = int (*)(const polysum::ExperimentConfig&, std::ostream&);
  Command selected = nullptr;

  const std::pair<const char*, Command> commands[] = {
      {"simulate", polysum::cmd_simulate}, {"predict", polysum::cmd_predict},
      {"compare", polysum::cmd_compare},   {"verify", polysum::cmd_verify},
      {"diagnose", polysum::cmd_diagnose}};
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    add_common_flags(sub, args);
    Command cmd = fn;
    sub->callback([&selected, cmd] { selected = cmd; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return selected(make_config(args), std::cout);
  } catch (const polysum::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return polysum::kExitConfigError;
  } catch (const polysum::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return polysum::kExitNoConvergence;
  } catch (const polysum::GridCoverageError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return polysum::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return polysum::kExitAssertionFailed;
  }
}
