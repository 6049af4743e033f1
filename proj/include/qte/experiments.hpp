// Named experiment runners behind the CLI: each writes deterministic CSV/JSON
// artifacts for one reproduction target.

#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qte/config.hpp"

namespace qte {

struct RunOverrides {
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicas;
  bool force_exact = false;  // drop the shot model regardless of the config
};

// Executes the configured experiment, writing its artifacts under the output
// directory. Throws ConfigError for invalid setups and NumericalError when an
// evolution aborts.
void run_experiment(ExperimentConfig config, const RunOverrides& overrides = {});

// One entry per experiment: name, the figure it reproduces, and its resolved
// default configuration.
std::string experiment_manifest();

// Worker-thread cap honored by replica loops; reads QTE_THREADS, defaulting
// to the hardware concurrency.
int worker_thread_cap();

}  // namespace qte
