#include "swt/config.hpp"
#include "swt/report.hpp"
#include "swt/runner.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"swtk: Seiberg-Witten variational toolkit on the flat 4-torus"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::int64_t seed_override = -1;
  bool parallel = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory for reports");
    sub->add_option("--seed", seed_override, "override the config seed");
    sub->add_flag("--parallel", parallel, "use all hardware threads for pointwise maps");
  };

  CLI::App* identities =
      app.add_subcommand("identities", "verify the algebraic and discrete identities");
  CLI::App* flow = app.add_subcommand("flow", "minimize the functional by gradient descent");
  CLI::App* screen =
      app.add_subcommand("screen", "enumerate admissible classes of an intersection form");
  add_common(identities);
  add_common(flow);
  add_common(screen);

  CLI11_PARSE(app, argc, argv);

  try {
    swt::ExperimentConfig ec = swt::load_experiment(config_path);
    if (seed_override >= 0) ec.seed = static_cast<std::uint64_t>(seed_override);
    if (parallel) ec.parallel = true;

    if (identities->parsed()) return swt::run_identities(ec, out_dir);
    if (flow->parsed()) return swt::run_flow(ec, out_dir);
    return swt::run_screen(ec, out_dir);
  } catch (const swt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return swt::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return swt::kExitUsage;
  }
}
