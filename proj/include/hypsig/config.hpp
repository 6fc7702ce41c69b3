#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypsig/lattice.hpp"

namespace hypsig {

enum class Mode { Simulate, ChainExact, Spectrum, WardCheck, CrossValidate };
std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

// Fully validated experiment description.  Invalid input throws ConfigError
// before any computation starts.
struct ExperimentConfig {
  Mode mode = Mode::Simulate;

  // model
  int target_dim = 2;
  std::vector<int> dims = {32};
  double beta = 1.0;
  std::vector<double> alpha_grid = {1.0};
  GaugeFix gauge = GaugeFix::FixedSpinBoundary;
  double epsilon = 0.0;

  // run
  long sweeps = 20000;
  long thermalization = -1;  // -1: pilot-run rule max(1000, 20 tau)
  long measure_every = 2;
  std::uint64_t seed = 12345;
  std::string kernel = "heat_bath";  // or "metropolis"
  double metropolis_scale = 0.5;

  // solver
  double rho_max = 0.0;  // 0: default 30 + 10/beta
  int n_rho = 400;
  int n_modes = 64;
  std::vector<int> chain_lengths = {8, 16, 32, 64};

  std::string out_dir = "out";

  void validate() const;  // throws ConfigError naming the offending key
  UpdateKernel update_kernel() const;
  double effective_rho_max() const;

  std::string to_json() const;  // effective config, round-trips exactly
  static ExperimentConfig from_json(const std::string& text);
};

// key = value text with optional [section] headers and # comments, or a
// JSON object (detected by a leading '{').  Unknown keys are rejected.
ExperimentConfig parse_config_file(const std::string& path);

// Merge order: defaults < file < flags.  `overrides` holds flag values as
// key/value strings with the same key names as the file format.
ExperimentConfig apply_overrides(ExperimentConfig base,
                                 const std::map<std::string, std::string>& overrides);

std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace hypsig
