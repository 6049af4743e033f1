// Experiment harness entry point.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical abort.

#include <cstdint>
#include <iostream>

#include "CLI11.hpp"

#include "qte/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Variational quantum time evolution benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int repeat = 0;
  bool exact_shots = false;

  CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("config", config_path, "path to the configuration file")->required();
  run->add_option("--out", out_dir, "output directory (overrides output_path)");
  CLI::Option* seed_option =
      run->add_option("--seed", seed, "master seed (overrides the config)");
  CLI::Option* repeat_option =
      run->add_option("--repeat", repeat, "number of seeded replicas");
  run->add_flag("--exact-shots", exact_shots, "disable the shot model");

  CLI::App* list = app.add_subcommand("list", "list the named experiments");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::cout << qte::experiment_manifest();
      return 0;
    }
    qte::RunOverrides overrides;
    if (!out_dir.empty()) overrides.output_dir = out_dir;
    if (seed_option->count() > 0) overrides.seed = seed;
    if (repeat_option->count() > 0) overrides.replicas = repeat;
    overrides.force_exact = exact_shots;
    qte::run_experiment(qte::load_config(config_path), overrides);
    return 0;
  } catch (const qte::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const qte::NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
