#pragma once

#include "hypsig/config.hpp"

namespace hypsig {

// Executes the configured experiment and writes artifacts plus manifest.json
// under config.out_dir.  Throws ConfigError / InvariantError / NumericalError;
// the CLI maps those to exit codes 2 / 3 / 4.
void run_experiment(const ExperimentConfig& config, int n_threads = 1);

}  // namespace hypsig
